//! Named groups in fixed permutation representations.

use crate::error::{Error, Result};
use crate::group::PermutationGroup;
use crate::perm::Permutation;

/// The built-in constructors. `Dihedral(n)` is the dihedral group of order `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Builtin {
    Symmetric(usize),
    Alternating(usize),
    Cyclic(usize),
    Dihedral(usize),
    Klein,
    G108,
}

impl Builtin {
    pub fn from_name(name: &str, params: &[usize]) -> Result<Self> {
        let one = |ctor: fn(usize) -> Builtin| match params {
            [n] => Ok(ctor(*n)),
            _ => Err(Error::ParameterOutOfRange(format!(
                "{name} takes exactly one parameter"
            ))),
        };
        match name {
            "S" => one(Builtin::Symmetric),
            "A" => one(Builtin::Alternating),
            "C" => one(Builtin::Cyclic),
            "D" => one(Builtin::Dihedral),
            "Klein" | "G108" if !params.is_empty() => Err(Error::ParameterOutOfRange(format!(
                "{name} takes no parameters"
            ))),
            "Klein" => Ok(Builtin::Klein),
            "G108" => Ok(Builtin::G108),
            other => Err(Error::UnknownConstructor(other.to_string())),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Builtin::Symmetric(n) => format!("S({n})"),
            Builtin::Alternating(n) => format!("A({n})"),
            Builtin::Cyclic(n) => format!("C({n})"),
            Builtin::Dihedral(n) => format!("D({n})"),
            Builtin::Klein => "Klein".into(),
            Builtin::G108 => "G108".into(),
        }
    }

    /// Expected order, saturating on overflow.
    pub fn order(&self) -> usize {
        match *self {
            Builtin::Symmetric(n) => factorial(n),
            Builtin::Alternating(n) => (factorial(n) / 2).max(1),
            Builtin::Cyclic(n) | Builtin::Dihedral(n) => n,
            Builtin::Klein => 4,
            Builtin::G108 => 108,
        }
    }

    pub fn build(&self, cap: usize) -> Result<PermutationGroup> {
        let order = self.order();
        if order > cap {
            return Err(Error::ParameterOutOfRange(format!(
                "{} has order {order} above the cap {cap}",
                self.label()
            )));
        }
        let cyc = |deg: usize, cycles: &[&[usize]]| {
            let cs: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
            Permutation::from_cycles(deg, &cs)
        };
        let (degree, gens) = match *self {
            Builtin::Symmetric(0) | Builtin::Alternating(0) | Builtin::Cyclic(0) => {
                return Err(Error::ParameterOutOfRange(format!(
                    "{} needs a positive parameter",
                    self.label()
                )))
            }
            Builtin::Symmetric(1) | Builtin::Alternating(1 | 2) | Builtin::Cyclic(1) => {
                let n = match *self {
                    Builtin::Alternating(2) => 2,
                    _ => 1,
                };
                (n, vec![])
            }
            Builtin::Symmetric(n) => {
                let full: Vec<usize> = (1..=n).collect();
                (n, vec![cyc(n, &[&[1, 2]])?, cyc(n, &[&full])?])
            }
            Builtin::Alternating(n) => {
                let tail: Vec<usize> = if n % 2 == 1 {
                    (1..=n).collect()
                } else {
                    (2..=n).collect()
                };
                let mut gens = vec![cyc(n, &[&[1, 2, 3]])?];
                if n > 3 {
                    gens.push(cyc(n, &[&tail])?);
                }
                (n, gens)
            }
            Builtin::Cyclic(n) => {
                let full: Vec<usize> = (1..=n).collect();
                (n, vec![cyc(n, &[&full])?])
            }
            Builtin::Dihedral(n) => {
                if n < 2 || n % 2 == 1 {
                    return Err(Error::ParameterOutOfRange(format!(
                        "D(n) is the dihedral group of order n; n must be even and at least 2, got {n}"
                    )));
                }
                match n / 2 {
                    1 => (2, vec![cyc(2, &[&[1, 2]])?]),
                    2 => (4, vec![cyc(4, &[&[1, 2]])?, cyc(4, &[&[3, 4]])?]),
                    m => {
                        let rotation: Vec<usize> = (1..=m).collect();
                        let reflection: Vec<Vec<usize>> =
                            (1..=m / 2).map(|i| vec![i, m + 1 - i]).collect();
                        (
                            m,
                            vec![
                                cyc(m, &[&rotation])?,
                                Permutation::from_cycles(m, &reflection)?,
                            ],
                        )
                    }
                }
            }
            Builtin::Klein => (
                4,
                vec![cyc(4, &[&[1, 2], &[3, 4]])?, cyc(4, &[&[1, 3], &[2, 4]])?],
            ),
            Builtin::G108 => (9, g108_generators()),
        };
        let group = PermutationGroup::generate_capped(degree, gens, cap)?;
        debug_assert_eq!(group.order(), order);
        Ok(group.with_label(self.label()))
    }
}

/// `(Z/3)^3 ⋊ V4` on three blocks of three points. Translations are 3-cycles on each
/// block; the two Klein generators negate coordinates according to the characters
/// `(χ_a, χ_b, χ_ab)`, i.e. `a` negates blocks 1 and 3 and `b` negates blocks 2 and 3.
pub fn g108_generators() -> Vec<Permutation> {
    g108_like_generators([1, 2, 3])
}

/// Generators of `(Z/3)^3 ⋊ V4` where coordinate `i` carries the Klein character
/// encoded by `chars[i]`: 0 trivial, 1 `χ_a`, 2 `χ_b`, 3 `χ_ab`.
pub fn g108_like_generators(chars: [u8; 3]) -> Vec<Permutation> {
    let mut gens = Vec::new();
    for block in 0..3 {
        let b = 3 * block;
        gens.push(
            Permutation::from_cycles(9, &[vec![b + 1, b + 2, b + 3]]).expect("valid 3-cycle"),
        );
    }
    // χ_a(a) = χ_ab(a) = -1, χ_b(b) = χ_ab(b) = -1
    for negating in [[1u8, 3], [2u8, 3]] {
        let swaps: Vec<Vec<usize>> = (0..3)
            .filter(|&i| negating.contains(&chars[i]))
            .map(|i| vec![3 * i + 2, 3 * i + 3])
            .collect();
        gens.push(Permutation::from_cycles(9, &swaps).expect("valid involution"));
    }
    gens
}

fn factorial(n: usize) -> usize {
    (1..=n).fold(1usize, |acc, k| acc.saturating_mul(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_ORDER_CAP;

    fn order(b: Builtin) -> usize {
        b.build(DEFAULT_ORDER_CAP).unwrap().order()
    }

    #[test]
    fn orders() {
        assert_eq!(order(Builtin::Symmetric(4)), 24);
        assert_eq!(order(Builtin::Symmetric(1)), 1);
        assert_eq!(order(Builtin::Alternating(4)), 12);
        assert_eq!(order(Builtin::Alternating(5)), 60);
        assert_eq!(order(Builtin::Alternating(6)), 360);
        assert_eq!(order(Builtin::Cyclic(1)), 1);
        assert_eq!(order(Builtin::Cyclic(7)), 7);
        assert_eq!(order(Builtin::Dihedral(8)), 8);
        assert_eq!(order(Builtin::Dihedral(10)), 10);
        assert_eq!(order(Builtin::Dihedral(6)), 6);
        assert_eq!(order(Builtin::Dihedral(4)), 4);
        assert_eq!(order(Builtin::Klein), 4);
        assert_eq!(order(Builtin::G108), 108);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            Builtin::from_name("Q", &[8]),
            Err(Error::UnknownConstructor(_))
        ));
        assert!(matches!(
            Builtin::Symmetric(9).build(DEFAULT_ORDER_CAP),
            Err(Error::ParameterOutOfRange(_))
        ));
        assert!(matches!(
            Builtin::Dihedral(7).build(DEFAULT_ORDER_CAP),
            Err(Error::ParameterOutOfRange(_))
        ));
        assert!(Builtin::Symmetric(8).build(DEFAULT_ORDER_CAP).is_ok());
    }

    #[test]
    fn g108_is_centerless_with_15_classes() {
        let g = Builtin::G108.build(DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(g.classes().len(), 15);
        assert_eq!(g.center().order(), 1);
    }
}
