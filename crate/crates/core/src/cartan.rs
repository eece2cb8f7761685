//! Restriction, induction and Cartan matrices of a general algebra pair, supplied as
//! data, with the consistency relation `DM = NC` and the necessary matrix
//! conditions for depth.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::depth::Certificate;
use crate::error::{Error, Result};
use crate::intmat::IntMatrix;

/// Matrix data of an algebra pair `B ⊆ A`: `r` simples of `B`, `s` simples of `A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraMatrixData {
    pub label: String,
    pub r: usize,
    pub s: usize,
    /// Restriction, `r × s`.
    #[serde(rename = "M")]
    pub m: IntMatrix,
    /// Induction, `r × s`.
    #[serde(rename = "N")]
    pub n: IntMatrix,
    /// Cartan matrix of `A`, `s × s`.
    #[serde(rename = "C")]
    pub c: IntMatrix,
    /// Cartan matrix of `B`, `r × r`.
    #[serde(rename = "D")]
    pub d: IntMatrix,
    pub algebraically_closed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryViolation {
    pub row: usize,
    pub col: usize,
    #[serde(serialize_with = "big")]
    pub dm: num_bigint::BigInt,
    #[serde(serialize_with = "big")]
    pub nc: num_bigint::BigInt,
}

fn big<S: serde::Serializer>(x: &num_bigint::BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    crate::serde_util::big_number(x).serialize(s)
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub label: String,
    pub problems: Vec<String>,
    /// Whether `DM = NC` was checked (only for algebraically closed data).
    pub relation_checked: bool,
    pub relation_violations: Vec<EntryViolation>,
}

impl ValidationReport {
    pub fn passes(&self) -> bool {
        self.problems.is_empty() && self.relation_violations.is_empty()
    }
}

fn check_shape(problems: &mut Vec<String>, name: &str, m: &IntMatrix, rows: usize, cols: usize) {
    if m.rows() != rows || m.cols() != cols {
        problems.push(format!(
            "{name} is {}x{}, expected {rows}x{cols}",
            m.rows(),
            m.cols()
        ));
    }
    if !m.is_nonnegative() {
        problems.push(format!("{name} has a negative entry"));
    }
}

pub fn validate(data: &AlgebraMatrixData) -> ValidationReport {
    let mut problems = Vec::new();
    let (r, s) = (data.r, data.s);
    if r == 0 || s == 0 {
        problems.push("r and s must be positive".into());
    }
    check_shape(&mut problems, "M", &data.m, r, s);
    check_shape(&mut problems, "N", &data.n, r, s);
    check_shape(&mut problems, "C", &data.c, s, s);
    check_shape(&mut problems, "D", &data.d, r, r);

    let mut relation_violations = Vec::new();
    let relation_checked = data.algebraically_closed && problems.is_empty();
    if relation_checked {
        let dm = data.d.mul(&data.m).expect("shapes checked");
        let nc = data.n.mul(&data.c).expect("shapes checked");
        relation_violations = dm
            .differences(&nc)
            .into_iter()
            .map(|(i, j)| EntryViolation {
                row: i,
                col: j,
                dm: dm.get(i, j).clone(),
                nc: nc.get(i, j).clone(),
            })
            .collect();
    }
    ValidationReport {
        label: data.label.clone(),
        problems,
        relation_checked,
        relation_violations,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

impl std::str::FromStr for Parity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            _ => Err(Error::ParameterOutOfRange(format!(
                "parity must be `even` or `odd`, got `{s}`"
            ))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NecessaryCondition {
    pub n: u32,
    pub parity: Parity,
    /// The depth this condition is necessary for: `2n` or `2n+1`.
    pub depth: u32,
    pub holds: bool,
    pub certificate: Certificate,
}

/// With `P = MNᵀ`: for even parity `P^n M ≤ t·P^{n-1} M`, necessary for depth
/// `2n`; for odd parity `P^{n+1} ≤ t·P^n`, necessary for depth `2n+1`. A true value
/// never establishes the depth.
pub fn necessary_condition(
    data: &AlgebraMatrixData,
    n: u32,
    parity: Parity,
) -> Result<NecessaryCondition> {
    if n == 0 {
        return Err(Error::ParameterOutOfRange("n must be at least 1".into()));
    }
    let (r, s) = (data.r, data.s);
    if data.m.rows() != r || data.m.cols() != s || data.n.rows() != r || data.n.cols() != s {
        return Err(Error::DimensionMismatch(format!(
            "M and N must both be {r}x{s}"
        )));
    }
    let p = data.m.mul(&data.n.transpose())?;
    let (lower, higher, depth) = match parity {
        Parity::Even => (p.pow(n - 1)?.mul(&data.m)?, p.pow(n)?.mul(&data.m)?, 2 * n),
        Parity::Odd => (p.pow(n)?, p.pow(n + 1)?, 2 * n + 1),
    };
    let holds = lower.zeros_subset_of(&higher);
    let (lower_power, higher_power) = match parity {
        Parity::Even => (n - 1, n),
        Parity::Odd => (n, n + 1),
    };
    Ok(NecessaryCondition {
        n,
        parity,
        depth,
        holds,
        certificate: Certificate {
            depth,
            base: "MN^T",
            lower_power,
            higher_power,
            lower,
            higher,
        },
    })
}

/// Upper triangular `n × n` matrices over the subalgebra of diagonal matrices.
pub fn triangular_example(n: usize) -> AlgebraMatrixData {
    let upper = IntMatrix::from_i64_rows(
        &(0..n)
            .map(|i| (0..n).map(|j| i64::from(i <= j)).collect())
            .collect::<Vec<_>>(),
    )
    .expect("square");
    AlgebraMatrixData {
        label: format!("T_{n}(k) over diagonal matrices"),
        r: n,
        s: n,
        m: upper.clone(),
        n: IntMatrix::identity(n),
        c: upper,
        d: IntMatrix::identity(n),
        algebraically_closed: true,
        note: Some(
            "satisfies the depth-two inequality M^2 <= nM, yet its minimum depth is 3".into(),
        ),
    }
}

/// Data for a pair of semisimple algebras: `N = M`, identity Cartan matrices.
pub fn from_semisimple_pair(m: &IntMatrix) -> Result<AlgebraMatrixData> {
    if m.rows() == 0 || m.cols() == 0 {
        return Err(Error::DegenerateMatrix("empty matrix".into()));
    }
    if !m.is_nonnegative() {
        return Err(Error::DegenerateMatrix("negative entry".into()));
    }
    if let Some(i) = m.zero_rows().first() {
        return Err(Error::DegenerateMatrix(format!("row {i} is zero")));
    }
    if let Some(j) = m.zero_cols().first() {
        return Err(Error::DegenerateMatrix(format!("column {j} is zero")));
    }
    Ok(AlgebraMatrixData {
        label: "semisimple pair".into(),
        r: m.rows(),
        s: m.cols(),
        m: m.clone(),
        n: m.clone(),
        c: IntMatrix::identity(m.cols()),
        d: IntMatrix::identity(m.rows()),
        algebraically_closed: true,
        note: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn triangular_validates() {
        for n in 1..=6 {
            assert!(validate(&triangular_example(n)).passes());
        }
        let one = triangular_example(1);
        assert_eq!(one.m, IntMatrix::identity(1));
        assert_eq!(one.c, IntMatrix::identity(1));
    }

    #[test]
    fn perturbation_is_located() {
        let mut data = triangular_example(3);
        data.m.set(0, 2, BigInt::from(2));
        let rep = validate(&data);
        assert_eq!(rep.relation_violations.len(), 1);
        assert_eq!(
            (
                rep.relation_violations[0].row,
                rep.relation_violations[0].col
            ),
            (0, 2)
        );
    }

    #[test]
    fn depth_two_inequality_for_triangular() {
        let cond = necessary_condition(&triangular_example(3), 1, Parity::Even).unwrap();
        assert!(cond.holds);
        assert_eq!(cond.depth, 2);
    }

    #[test]
    fn refuting_instance() {
        let m = IntMatrix::from_i64_rows(&[vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        let data = from_semisimple_pair(&m).unwrap();
        assert!(!necessary_condition(&data, 1, Parity::Even).unwrap().holds);
    }

    #[test]
    fn degenerate_pairs_rejected() {
        let m = IntMatrix::from_i64_rows(&[vec![1, 0], vec![0, 0]]).unwrap();
        assert!(matches!(
            from_semisimple_pair(&m),
            Err(Error::DegenerateMatrix(_))
        ));
    }

    #[test]
    fn shape_errors() {
        let mut data = triangular_example(2);
        data.n = IntMatrix::identity(3);
        assert!(!validate(&data).passes());
        assert!(matches!(
            necessary_condition(&data, 1, Parity::Odd),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn json_schema() {
        let data = triangular_example(2);
        let json = serde_json::to_value(&data).unwrap();
        for key in [
            "label",
            "r",
            "s",
            "M",
            "N",
            "C",
            "D",
            "algebraically_closed",
        ] {
            assert!(json.get(key).is_some(), "{key}");
        }
        let back: AlgebraMatrixData = serde_json::from_value(json).unwrap();
        assert_eq!(back, data);
    }
}
