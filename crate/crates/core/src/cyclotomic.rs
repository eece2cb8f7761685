//! Exact arithmetic in cyclotomic fields `Q(ζ_e)`.
//!
//! Elements are stored in the power basis `1, ζ, .., ζ^(φ(e)-1)` modulo the `e`-th
//! cyclotomic polynomial, as integer numerators over one positive common denominator.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Debug)]
struct CycloField {
    conductor: usize,
    phi: usize,
    /// `powers[k]` holds `ζ^k` in the power basis, for `k` in `0..conductor`.
    powers: Vec<Vec<i64>>,
}

fn field(conductor: usize) -> Arc<CycloField> {
    static FIELDS: OnceLock<Mutex<HashMap<usize, Arc<CycloField>>>> = OnceLock::new();
    let cache = FIELDS.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().expect("field cache poisoned");
    map.entry(conductor)
        .or_insert_with(|| Arc::new(CycloField::new(conductor)))
        .clone()
}

impl CycloField {
    fn new(conductor: usize) -> Self {
        assert!(conductor >= 1, "conductor must be positive");
        let phi_poly = cyclotomic_polynomial(conductor);
        let phi = phi_poly.len() - 1;
        let mut powers = Vec::with_capacity(conductor);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..conductor {
            powers.push(cur.clone());
            // multiply by x and reduce x^phi = -Σ Φ_i x^i
            let top = cur[phi - 1];
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..phi {
                    cur[i] -= top * phi_poly[i];
                }
            }
        }
        Self {
            conductor,
            phi,
            powers,
        }
    }
}

/// Integer coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: usize) -> Vec<i64> {
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut poly = vec![0i64; n + 1];
    poly[0] = -1;
    poly[n] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            poly = exact_divide(&poly, &cyclotomic_polynomial(d));
        }
    }
    poly
}

fn exact_divide(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = num.len() - 1 - dd;
    let mut q = vec![0i64; qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd] / den[dd];
        q[i] = c;
        for j in 0..=dd {
            rem[i + j] -= c * den[j];
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// An exact element of `Q(ζ_e)`.
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<CycloField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Cyclotomic {
    pub fn zero(conductor: usize) -> Self {
        let field = field(conductor);
        let num = vec![BigInt::zero(); field.phi];
        Self {
            field,
            num,
            den: BigInt::one(),
        }
    }

    pub fn from_integer(conductor: usize, value: impl Into<BigInt>) -> Self {
        let mut z = Self::zero(conductor);
        z.num[0] = value.into();
        z
    }

    pub fn from_rational(conductor: usize, value: &BigRational) -> Self {
        let mut z = Self::zero(conductor);
        z.num[0] = value.numer().clone();
        z.den = value.denom().clone();
        z.normalize();
        z
    }

    /// `ζ_e^k`.
    pub fn root_of_unity(conductor: usize, k: usize) -> Self {
        let field = field(conductor);
        let num = field.powers[k % conductor]
            .iter()
            .map(|&c| BigInt::from(c))
            .collect();
        Self {
            field,
            num,
            den: BigInt::one(),
        }
    }

    /// `Σ_k counts[k] ζ_e^k`, for integer multiplicities.
    pub fn from_root_multiplicities(conductor: usize, counts: &[i64]) -> Self {
        let field = field(conductor);
        let mut acc = vec![0i64; field.phi];
        for (k, &m) in counts.iter().enumerate() {
            if m == 0 {
                continue;
            }
            for (a, &c) in acc.iter_mut().zip(&field.powers[k % conductor]) {
                *a += m * c;
            }
        }
        Self {
            num: acc.into_iter().map(BigInt::from).collect(),
            field,
            den: BigInt::one(),
        }
    }

    /// Parses coefficient strings of the form `p` or `p/q`.
    pub fn from_coefficient_strings(conductor: usize, coeffs: &[String]) -> Result<Self> {
        let f = field(conductor);
        if coeffs.len() != f.phi {
            return Err(Error::Malformed(format!(
                "expected {} coefficients for conductor {conductor}, got {}",
                f.phi,
                coeffs.len()
            )));
        }
        let mut acc = Self::zero(conductor);
        for (i, s) in coeffs.iter().enumerate() {
            let q = parse_rational(s)?;
            let mut term = Self::zero(conductor);
            term.num[i] = q.numer().clone();
            term.den = q.denom().clone();
            acc = &acc + &term;
        }
        Ok(acc)
    }

    pub fn conductor(&self) -> usize {
        self.field.conductor
    }

    pub fn coefficients(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|n| BigRational::new(n.clone(), self.den.clone()))
            .collect()
    }

    pub fn coefficient_strings(&self) -> Vec<String> {
        self.coefficients()
            .iter()
            .map(|q| {
                if q.denom().is_one() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    /// Re-expresses the element in `Q(ζ_m)` for a multiple `m` of the conductor.
    pub fn lift(&self, conductor: usize) -> Self {
        let e = self.conductor();
        if conductor == e {
            return self.clone();
        }
        assert!(
            conductor.is_multiple_of(e),
            "cannot lift conductor {e} to {conductor}"
        );
        let step = conductor / e;
        let target = field(conductor);
        let mut num = vec![BigInt::zero(); target.phi];
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (n, &p) in num.iter_mut().zip(&target.powers[(k * step) % conductor]) {
                if p != 0 {
                    *n += c * p;
                }
            }
        }
        let mut out = Self {
            field: target,
            num,
            den: self.den.clone(),
        };
        out.normalize();
        out
    }

    /// Complex conjugation `ζ ↦ ζ⁻¹`.
    pub fn conj(&self) -> Self {
        self.galois(self.conductor() - 1)
    }

    /// The automorphism `ζ ↦ ζ^k` for `k` coprime to the conductor.
    pub fn galois(&self, k: usize) -> Self {
        let e = self.conductor();
        let mut num = vec![BigInt::zero(); self.field.phi];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (n, &p) in num.iter_mut().zip(&self.field.powers[(i * k) % e]) {
                if p != 0 {
                    *n += c * p;
                }
            }
        }
        let mut out = Self {
            field: self.field.clone(),
            num,
            den: self.den.clone(),
        };
        out.normalize();
        out
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let mut out = Self {
            field: self.field.clone(),
            num: self.num.iter().map(|n| n * q.numer()).collect(),
            den: &self.den * q.denom(),
        };
        out.normalize();
        out
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::from_integer(self.conductor(), 1);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// Floating-point value, for display only.
    pub fn to_complex_approx(&self) -> (f64, f64) {
        let e = self.conductor() as f64;
        let den = self.den.to_f64().unwrap_or(f64::NAN);
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.num.iter().enumerate() {
            let c = c.to_f64().unwrap_or(f64::NAN) / den;
            let angle = std::f64::consts::TAU * k as f64 / e;
            re += c * angle.cos();
            im += c * angle.sin();
        }
        (re, im)
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            for n in &mut self.num {
                *n = -&*n;
            }
        }
        if self.is_zero() {
            self.den = BigInt::one();
            return;
        }
        let mut g = self.den.clone();
        for n in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(n);
        }
        if !g.is_one() {
            for n in &mut self.num {
                *n = &*n / &g;
            }
            self.den = &self.den / &g;
        }
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.conductor() == b.conductor() {
            (a.clone(), b.clone())
        } else {
            let l = a.conductor().lcm(&b.conductor());
            (a.lift(l), b.lift(l))
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Malformed(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(
            s.trim().parse().map_err(|_| bad())?,
        )),
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.conductor() != rhs.conductor() {
            let (a, b) = Cyclotomic::common(self, rhs);
            return &a + &b;
        }
        let num = if self.den == rhs.den {
            self.num.iter().zip(&rhs.num).map(|(a, b)| a + b).collect()
        } else {
            self.num
                .iter()
                .zip(&rhs.num)
                .map(|(a, b)| a * &rhs.den + b * &self.den)
                .collect()
        };
        let den = if self.den == rhs.den {
            self.den.clone()
        } else {
            &self.den * &rhs.den
        };
        let mut out = Cyclotomic {
            field: self.field.clone(),
            num,
            den,
        };
        out.normalize();
        out
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            field: self.field.clone(),
            num: self.num.iter().map(|n| -n).collect(),
            den: self.den.clone(),
        }
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.conductor() != rhs.conductor() {
            let (a, b) = Cyclotomic::common(self, rhs);
            return &a * &b;
        }
        let f = &self.field;
        let phi = f.phi;
        let mut raw = vec![BigInt::zero(); 2 * phi - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.num.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        let mut num: Vec<BigInt> = raw[..phi].to_vec();
        for (k, c) in raw.iter().enumerate().skip(phi) {
            if c.is_zero() {
                continue;
            }
            for (n, &p) in num.iter_mut().zip(&f.powers[k % f.conductor]) {
                if p != 0 {
                    *n += c * p;
                }
            }
        }
        let mut out = Cyclotomic {
            field: f.clone(),
            num,
            den: &self.den * &rhs.den,
        };
        out.normalize();
        out
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor() == other.conductor() {
            self.den == other.den && self.num == other.num
        } else {
            let (a, b) = Cyclotomic::common(self, other);
            a == b
        }
    }
}

impl Eq for Cyclotomic {}

impl PartialOrd for Cyclotomic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order of power-basis coefficient vectors, after lifting to a
/// common conductor. A total order used only for canonical sorting.
impl Ord for Cyclotomic {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.conductor() != other.conductor() {
            let (a, b) = Cyclotomic::common(self, other);
            return a.cmp(&b);
        }
        for (a, b) in self.num.iter().zip(&other.num) {
            let ord = (a * &other.den).cmp(&(b * &self.den));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        Ordering::Equal
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.to_rational() {
            return write!(f, "{q}");
        }
        let e = self.conductor();
        let mut first = true;
        for (k, q) in self.coefficients().iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let neg = q.is_negative();
            let mag = q.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let root = match k {
                0 => String::new(),
                1 => format!("z{e}"),
                _ => format!("z{e}^{k}"),
            };
            if k == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{root}")?;
            } else {
                write!(f, "{mag}*{root}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({self})")
    }
}
