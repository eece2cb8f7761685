//! Ordinary character tables by the Dixon–Schneider method.
//!
//! Class matrices are diagonalised simultaneously over a prime field `F_p` with
//! `p ≡ 1 (mod e)`; the resulting central characters are turned into character
//! values mod `p` and lifted to exact cyclotomic numbers through the eigenvalue
//! multiplicities of each element, read off from the power maps.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classes::ConjugacyClassData;
use crate::classfn::ClassFunction;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{GroupFingerprint, PermutationGroup};
use crate::modp;

/// Dixon primes are searched below this bound.
pub const PRIME_SEARCH_BOUND: u64 = 1 << 31;

/// Structure constants of the class algebra: `a[i][j][k] = #{(x, y) ∈ C_i × C_j : xy = z_k}`
/// for the fixed representative `z_k` of class `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassMultiplication {
    classes: usize,
    data: Vec<u64>,
}

impl ClassMultiplication {
    pub fn get(&self, i: usize, j: usize, k: usize) -> u64 {
        self.data[(i * self.classes + j) * self.classes + k]
    }

    pub fn classes(&self) -> usize {
        self.classes
    }
}

pub fn class_mult_coefficients(group: &PermutationGroup) -> ClassMultiplication {
    let r = group.classes().len();
    let mut data = vec![0u64; r * r * r];
    let slices: Vec<Vec<Vec<u64>>> = (0..r)
        .into_par_iter()
        .map(|i| class_matrix(group, i))
        .collect();
    for (i, m) in slices.iter().enumerate() {
        for (j, row) in m.iter().enumerate() {
            for (k, &v) in row.iter().enumerate() {
                data[(i * r + j) * r + k] = v;
            }
        }
    }
    ClassMultiplication { classes: r, data }
}

/// The matrix `(a[i][j][k])_{j,k}` for fixed `i`; its right eigenvectors are the
/// central characters.
fn class_matrix(group: &PermutationGroup, i: usize) -> Vec<Vec<u64>> {
    let classes = group.classes();
    let r = classes.len();
    let mut m = vec![vec![0u64; r]; r];
    for (k, z) in classes.representatives.iter().enumerate() {
        for &xi in &classes.members[i] {
            let y = group.elements()[xi].inverse().compose(z);
            let j = classes.class_of[group.index_of(&y).expect("closed")];
            m[j][k] += 1;
        }
    }
    m
}

/// An exact character table. Rows are irreducible characters in canonical order
/// (trivial first, then by degree and value vector), columns are classes.
/// Supplies character tables, possibly from a cache.
pub trait TableSource: Sync {
    fn table(&self, group: &Arc<PermutationGroup>) -> Result<Arc<CharacterTable>>;
}

/// Computes every table from scratch.
#[derive(Clone, Copy, Debug, Default)]
pub struct ComputeTables;

impl TableSource for ComputeTables {
    fn table(&self, group: &Arc<PermutationGroup>) -> Result<Arc<CharacterTable>> {
        CharacterTable::compute(group.clone()).map(Arc::new)
    }
}

#[derive(Clone, Debug)]
pub struct CharacterTable {
    group: Arc<PermutationGroup>,
    conductor: usize,
    irreducibles: Vec<Vec<Cyclotomic>>,
    degrees: Vec<u64>,
}

impl CharacterTable {
    pub fn compute(group: Arc<PermutationGroup>) -> Result<Self> {
        let (table, _prime) = Self::compute_with_prime_floor(group, 0)?;
        Ok(table)
    }

    /// Runs the computation with a Dixon prime above `floor` as well as above
    /// `2√|G|`. Returns the table and the prime used.
    pub fn compute_with_prime_floor(
        group: Arc<PermutationGroup>,
        floor: u64,
    ) -> Result<(Self, u64)> {
        let classes = group.classes();
        let r = classes.len();
        let order = group.order() as u64;
        let e = classes.exponent;
        let sqrt_bound = (2.0 * (order as f64).sqrt()).floor() as u64;
        let lower = sqrt_bound.max(floor);
        let p = modp::smallest_prime_1_mod(e as u64, lower, PRIME_SEARCH_BOUND).ok_or(
            Error::PrimeSearchFailed {
                exponent: e,
                lower_bound: lower,
                search_bound: PRIME_SEARCH_BOUND,
            },
        )?;

        let central = split_central_characters(&group, p)?;
        let z = modp::pow_mod(modp::primitive_root(p), (p - 1) / e as u64, p);

        let rows: Vec<(u64, Vec<Cyclotomic>)> = central
            .par_iter()
            .map(|omega| lift_character(classes, order, e, p, z, omega))
            .collect::<Result<_>>()?;

        let mut rows = rows;
        rows.sort_by(|a, b| {
            let trivial_a = is_trivial_row(&a.1);
            let trivial_b = is_trivial_row(&b.1);
            trivial_b
                .cmp(&trivial_a)
                .then(a.0.cmp(&b.0))
                .then_with(|| a.1.cmp(&b.1))
        });
        let table = Self {
            conductor: e,
            degrees: rows.iter().map(|r| r.0).collect(),
            irreducibles: rows.into_iter().map(|r| r.1).collect(),
            group,
        };
        if table.irreducibles.len() != r {
            return Err(Error::LiftInconsistent("wrong number of characters".into()));
        }
        table.check_orthogonality()?;
        Ok((table, p))
    }

    pub fn group(&self) -> &Arc<PermutationGroup> {
        &self.group
    }

    pub fn classes(&self) -> &ConjugacyClassData {
        self.group.classes()
    }

    pub fn conductor(&self) -> usize {
        self.conductor
    }

    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn irreducibles(&self) -> &[Vec<Cyclotomic>] {
        &self.irreducibles
    }

    pub fn value(&self, chi: usize, class: usize) -> &Cyclotomic {
        &self.irreducibles[chi][class]
    }

    pub fn character(&self, i: usize) -> ClassFunction {
        ClassFunction::new_unchecked(self.group.clone(), self.irreducibles[i].clone())
    }

    pub fn characters(&self) -> Vec<ClassFunction> {
        (0..self.len()).map(|i| self.character(i)).collect()
    }

    /// Exact row and column orthogonality, plus `Σ d² = |G|`.
    pub fn check_orthogonality(&self) -> Result<()> {
        let classes = self.classes();
        let r = classes.len();
        let order = self.group.order();
        let sum_sq: u64 = self.degrees.iter().map(|d| d * d).sum();
        if sum_sq != order as u64 {
            return Err(Error::LiftInconsistent(format!(
                "sum of squared degrees {sum_sq} differs from |G| = {order}"
            )));
        }
        // conj χ(g) = χ(g⁻¹)
        let conj_rows: Vec<Vec<&Cyclotomic>> = self
            .irreducibles
            .iter()
            .map(|row| (0..r).map(|k| &row[classes.inverse_class[k]]).collect())
            .collect();
        let rows_ok = (0..r).into_par_iter().all(|i| {
            (i..r).all(|j| {
                let mut acc = Cyclotomic::zero(self.conductor);
                for k in 0..r {
                    let term = &self.irreducibles[i][k] * conj_rows[j][k];
                    let sized = term.scale(&BigInt::from(classes.class_sizes[k]).into());
                    acc = &acc + &sized;
                }
                let expected = if i == j { order } else { 0 };
                acc.to_integer() == Some(BigInt::from(expected))
            })
        });
        if !rows_ok {
            return Err(Error::LiftInconsistent("row orthogonality fails".into()));
        }
        let cols_ok = (0..r).into_par_iter().all(|k| {
            (k..r).all(|l| {
                let mut acc = Cyclotomic::zero(self.conductor);
                for i in 0..r {
                    acc = &acc + &(&self.irreducibles[i][k] * conj_rows[i][l]);
                }
                let expected = if k == l {
                    classes.centralizer_order(k, order)
                } else {
                    0
                };
                acc.to_integer() == Some(BigInt::from(expected))
            })
        });
        if !cols_ok {
            return Err(Error::LiftInconsistent("column orthogonality fails".into()));
        }
        Ok(())
    }

    pub fn to_document(&self) -> CharacterTableDocument {
        let classes = self.classes();
        CharacterTableDocument {
            schema: TABLE_SCHEMA.to_string(),
            version: TABLE_SCHEMA_VERSION,
            fingerprint: self.group.fingerprint(),
            classes: (0..classes.len())
                .map(|k| ClassRecord {
                    representative: classes.representatives[k].to_string(),
                    size: classes.class_sizes[k],
                    order: classes.element_orders[k],
                })
                .collect(),
            conductor: self.conductor,
            degrees: self.degrees.clone(),
            irreducibles: self
                .irreducibles
                .iter()
                .map(|row| row.iter().map(Cyclotomic::coefficient_strings).collect())
                .collect(),
        }
    }

    /// Rebuilds a table for `group` from a document, verifying that it belongs to
    /// this group and that it is a genuine character table.
    pub fn from_document(
        group: Arc<PermutationGroup>,
        doc: &CharacterTableDocument,
    ) -> Result<Self> {
        if doc.schema != TABLE_SCHEMA || doc.version != TABLE_SCHEMA_VERSION {
            return Err(Error::Malformed(format!(
                "unsupported schema {} v{}",
                doc.schema, doc.version
            )));
        }
        if doc.fingerprint != group.fingerprint() {
            return Err(Error::Malformed(
                "fingerprint does not match the group".into(),
            ));
        }
        let classes = group.classes();
        if doc.conductor != classes.exponent || doc.classes.len() != classes.len() {
            return Err(Error::Malformed(
                "class data does not match the group".into(),
            ));
        }
        for (k, rec) in doc.classes.iter().enumerate() {
            if rec.representative != classes.representatives[k].to_string()
                || rec.size != classes.class_sizes[k]
            {
                return Err(Error::Malformed(format!("class {k} does not match")));
            }
        }
        if doc.irreducibles.len() != classes.len() || doc.degrees.len() != classes.len() {
            return Err(Error::Malformed("wrong number of characters".into()));
        }
        let mut irreducibles = Vec::with_capacity(classes.len());
        for row in &doc.irreducibles {
            if row.len() != classes.len() {
                return Err(Error::Malformed("ragged character row".into()));
            }
            irreducibles.push(
                row.iter()
                    .map(|c| Cyclotomic::from_coefficient_strings(doc.conductor, c))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        for (row, &d) in irreducibles.iter().zip(&doc.degrees) {
            if row[0].to_integer() != Some(BigInt::from(d)) {
                return Err(Error::Malformed(
                    "degree does not match the identity value".into(),
                ));
            }
        }
        let table = Self {
            group,
            conductor: doc.conductor,
            irreducibles,
            degrees: doc.degrees.clone(),
        };
        table
            .check_orthogonality()
            .map_err(|e| Error::Malformed(e.to_string()))?;
        if !is_trivial_row(&table.irreducibles[0]) {
            return Err(Error::Malformed(
                "first row is not the trivial character".into(),
            ));
        }
        Ok(table)
    }
}

pub const TABLE_SCHEMA: &str = "subdepth.character-table";
pub const TABLE_SCHEMA_VERSION: u32 = 1;

/// Versioned JSON form of a character table. Values are power-basis coefficient
/// vectors with entries written as exact fractions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterTableDocument {
    pub schema: String,
    pub version: u32,
    pub fingerprint: GroupFingerprint,
    pub classes: Vec<ClassRecord>,
    pub conductor: usize,
    pub degrees: Vec<u64>,
    pub irreducibles: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRecord {
    pub representative: String,
    pub size: usize,
    pub order: usize,
}

fn is_trivial_row(row: &[Cyclotomic]) -> bool {
    row.iter()
        .all(|v| v.to_integer().is_some_and(|n| n == BigInt::from(1)))
}

/// Common eigenvectors of the class matrices over `F_p`, normalised to value 1 on
/// the identity class.
fn split_central_characters(group: &PermutationGroup, p: u64) -> Result<Vec<Vec<u64>>> {
    let r = group.classes().len();
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r)
        .map(|i| {
            let mut v = vec![0u64; r];
            v[i] = 1;
            v
        })
        .collect()];
    for j in 1..r {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let a: Vec<Vec<u64>> = class_matrix(group, j)
            .into_iter()
            .map(|row| row.into_iter().map(|x| x % p).collect())
            .collect();
        let mut next = Vec::with_capacity(r);
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
                continue;
            }
            next.extend(split_space(&a, space, p)?);
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) {
        return Err(Error::LiftInconsistent(
            "class matrices did not separate the central characters".into(),
        ));
    }
    spaces
        .into_iter()
        .map(|mut s| {
            let v = s.pop().expect("one vector");
            if v[0] == 0 {
                return Err(Error::LiftInconsistent(
                    "eigenvector vanishes at identity".into(),
                ));
            }
            let inv = modp::inv_mod(v[0], p);
            Ok(v.iter().map(|&x| modp::mul_mod(x, inv, p)).collect())
        })
        .collect()
}

/// Splits an `a`-invariant subspace (rows in reduced echelon form) into eigenspaces.
fn split_space(a: &[Vec<u64>], basis: Vec<Vec<u64>>, p: u64) -> Result<Vec<Vec<Vec<u64>>>> {
    let m = basis.len();
    let pivots: Vec<usize> = basis
        .iter()
        .map(|b| {
            b.iter()
                .position(|&x| x != 0)
                .expect("non-zero basis vector")
        })
        .collect();
    // restricted[row][col]: coordinate `row` of a·basis[col]
    let images: Vec<Vec<u64>> = basis.iter().map(|b| modp::mat_vec(a, b, p)).collect();
    let restricted: Vec<Vec<u64>> = (0..m)
        .map(|row| (0..m).map(|col| images[col][pivots[row]]).collect())
        .collect();
    let eigenvalues = modp::roots(&modp::charpoly(&restricted, p), p);
    let mut out = Vec::new();
    let mut total = 0;
    for lambda in eigenvalues {
        let shifted: Vec<Vec<u64>> = restricted
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, &x)| if i == j { (x + p - lambda) % p } else { x })
                    .collect()
            })
            .collect();
        let coords = modp::kernel(&shifted, p);
        let mut vecs: Vec<Vec<u64>> = coords
            .iter()
            .map(|c| {
                let mut v = vec![0u64; a.len()];
                for (coef, b) in c.iter().zip(&basis) {
                    if *coef == 0 {
                        continue;
                    }
                    for (x, &y) in v.iter_mut().zip(b) {
                        *x = (*x + modp::mul_mod(*coef, y, p)) % p;
                    }
                }
                v
            })
            .collect();
        modp::rref(&mut vecs, p);
        total += vecs.len();
        out.push(vecs);
    }
    if total != m {
        return Err(Error::LiftInconsistent(
            "class matrix is not diagonalisable on an eigenspace".into(),
        ));
    }
    Ok(out)
}

/// Turns a central character mod `p` into an exact irreducible character.
fn lift_character(
    classes: &ConjugacyClassData,
    order: u64,
    e: usize,
    p: u64,
    z: u64,
    omega: &[u64],
) -> Result<(u64, Vec<Cyclotomic>)> {
    let r = classes.len();
    // Σ_k ω_k ω_{k*} / |C_k| = |G| / d²
    let mut s = 0u64;
    for k in 0..r {
        let term = modp::mul_mod(omega[k], omega[classes.inverse_class[k]], p);
        let term = modp::mul_mod(term, modp::inv_mod(classes.class_sizes[k] as u64 % p, p), p);
        s = (s + term) % p;
    }
    if s == 0 {
        return Err(Error::LiftInconsistent(
            "degenerate central character".into(),
        ));
    }
    let d_sq = modp::mul_mod(order % p, modp::inv_mod(s, p), p);
    let degree = (1..)
        .take_while(|d| d * d <= order)
        .find(|d| (d * d) % p == d_sq)
        .ok_or_else(|| Error::LiftInconsistent("no admissible degree".into()))?;
    let values_p: Vec<u64> = (0..r)
        .map(|k| {
            let v = modp::mul_mod(degree % p, omega[k], p);
            modp::mul_mod(v, modp::inv_mod(classes.class_sizes[k] as u64 % p, p), p)
        })
        .collect();
    let e_inv = modp::inv_mod(e as u64 % p, p);
    let z_inv = modp::inv_mod(z, p);
    let mut row = Vec::with_capacity(r);
    for k in 0..r {
        let mut counts = vec![0i64; e];
        for (l, count) in counts.iter_mut().enumerate() {
            // multiplicity of ζ^l as an eigenvalue of g_k
            let step = modp::pow_mod(z_inv, l as u64, p);
            let mut w = 1u64;
            let mut acc = 0u64;
            for t in 0..e {
                let v = values_p[classes.power_map[t][k]];
                acc = (acc + modp::mul_mod(v, w, p)) % p;
                w = modp::mul_mod(w, step, p);
            }
            let m = modp::mul_mod(acc, e_inv, p);
            if m > degree {
                return Err(Error::LiftInconsistent(format!(
                    "eigenvalue multiplicity {m} exceeds degree {degree}"
                )));
            }
            *count = m as i64;
        }
        if counts.iter().sum::<i64>() != degree as i64 {
            return Err(Error::LiftInconsistent(
                "multiplicities do not sum to the degree".into(),
            ));
        }
        row.push(Cyclotomic::from_root_multiplicities(e, &counts));
    }
    debug_assert!(row[0].to_integer().and_then(|d| d.to_u64()) == Some(degree));
    Ok((degree, row))
}
