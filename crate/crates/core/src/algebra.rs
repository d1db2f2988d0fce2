//! Catalog of the eight-member algebra family and its irrep families.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Rational, Result};

/// Names of the family members, in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraName {
    A1,
    A2,
    G2,
    D4,
    F4,
    E6,
    E7,
    E8,
}

impl AlgebraName {
    pub const ALL: [AlgebraName; 8] = [
        AlgebraName::A1,
        AlgebraName::A2,
        AlgebraName::G2,
        AlgebraName::D4,
        AlgebraName::F4,
        AlgebraName::E6,
        AlgebraName::E7,
        AlgebraName::E8,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            AlgebraName::A1 => "a1",
            AlgebraName::A2 => "a2",
            AlgebraName::G2 => "g2",
            AlgebraName::D4 => "d4",
            AlgebraName::F4 => "f4",
            AlgebraName::E6 => "e6",
            AlgebraName::E7 => "e7",
            AlgebraName::E8 => "e8",
        }
    }
}

impl fmt::Display for AlgebraName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AlgebraName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a1" => Ok(AlgebraName::A1),
            "a2" => Ok(AlgebraName::A2),
            "g2" => Ok(AlgebraName::G2),
            "d4" => Ok(AlgebraName::D4),
            "f4" => Ok(AlgebraName::F4),
            "e6" => Ok(AlgebraName::E6),
            "e7" => Ok(AlgebraName::E7),
            "e8" => Ok(AlgebraName::E8),
            other => Err(Error::Config(format!("unknown algebra `{other}`"))),
        }
    }
}

/// One member of the family: identifiers and the exact parameters all
/// closed-form results are evaluated from.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyAlgebra {
    pub name: AlgebraName,
    /// Adjoint dimension.
    pub dim: u64,
    /// Deligne parameter; the canonical evaluation variable.
    pub m: Rational,
    /// Inverse dual Coxeter number, `1/(3(m+2))`.
    pub alpha: Rational,
    /// Membership in the exceptional subset.
    pub in_e: bool,
}

impl FamilyAlgebra {
    pub fn rank(&self) -> usize {
        match self.name {
            AlgebraName::A1 => 1,
            AlgebraName::A2 | AlgebraName::G2 => 2,
            AlgebraName::D4 | AlgebraName::F4 => 4,
            AlgebraName::E6 => 6,
            AlgebraName::E7 => 7,
            AlgebraName::E8 => 8,
        }
    }

    /// Adjoint dimension as a rational, convenient in formula code.
    pub fn dim_q(&self) -> Rational {
        Rational::from_integer(self.dim.into())
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// All eight members in canonical order.
pub fn catalog() -> Vec<FamilyAlgebra> {
    let data: [(AlgebraName, u64, Rational, bool); 8] = [
        (AlgebraName::A1, 3, q(-4, 3), false),
        (AlgebraName::A2, 8, q(-1, 1), false),
        (AlgebraName::G2, 14, q(-2, 3), true),
        (AlgebraName::D4, 28, q(0, 1), false),
        (AlgebraName::F4, 52, q(1, 1), true),
        (AlgebraName::E6, 78, q(2, 1), true),
        (AlgebraName::E7, 133, q(4, 1), true),
        (AlgebraName::E8, 248, q(8, 1), true),
    ];
    data.into_iter()
        .map(|(name, dim, m, in_e)| {
            let three = Rational::from_integer(3.into());
            let two = Rational::from_integer(2.into());
            let alpha = Rational::one() / (three * (&m + two));
            FamilyAlgebra {
                name,
                dim,
                m,
                alpha,
                in_e,
            }
        })
        .collect()
}

/// Look up one catalog entry.
pub fn algebra(name: AlgebraName) -> FamilyAlgebra {
    catalog()
        .into_iter()
        .find(|a| a.name == name)
        .expect("catalog covers all names")
}

/// Irrep families appearing in the adjoint square and cube.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Ad,
    R1,
    /// `X2 = R0`, the non-adjoint antisymmetric constituent.
    X2,
    R2,
    R3,
    R4,
    R5,
    R6,
    /// `X3 = R7`, the new constituent of the antisymmetric cube.
    X3,
    R8,
    R9,
}

impl Family {
    pub const ALL: [Family; 11] = [
        Family::Ad,
        Family::R1,
        Family::X2,
        Family::R2,
        Family::R3,
        Family::R4,
        Family::R5,
        Family::R6,
        Family::X3,
        Family::R8,
        Family::R9,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Ad => "ad",
            Family::R1 => "R1",
            Family::X2 => "X2",
            Family::R2 => "R2",
            Family::R3 => "R3",
            Family::R4 => "R4",
            Family::R5 => "R5",
            Family::R6 => "R6",
            Family::X3 => "X3",
            Family::R8 => "R8",
            Family::R9 => "R9",
        }
    }

    /// Families the catalog defines only on the exceptional subset.
    pub fn exceptional_only(self) -> bool {
        matches!(
            self,
            Family::R4 | Family::R5 | Family::R6 | Family::R8 | Family::R9
        )
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ad" => Ok(Family::Ad),
            "r1" => Ok(Family::R1),
            "x2" | "r0" => Ok(Family::X2),
            "r2" => Ok(Family::R2),
            "r3" => Ok(Family::R3),
            "r4" => Ok(Family::R4),
            "r5" => Ok(Family::R5),
            "r6" => Ok(Family::R6),
            "x3" | "r7" => Ok(Family::X3),
            "r8" => Ok(Family::R8),
            "r9" => Ok(Family::R9),
            other => Err(Error::Config(format!("unknown family `{other}`"))),
        }
    }
}

/// Render a rational as `p/q` (or a bare integer).
pub fn rational_str(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Exact integer extraction; panics if `x` is not integral.
pub fn expect_integer(x: &Rational, what: &str) -> num_bigint::BigInt {
    assert!(x.denom().is_one(), "{what} is not an integer: {x}");
    x.numer().clone()
}

/// Exact non-negative `u64` extraction.
pub fn expect_u64(x: &Rational, what: &str) -> u64 {
    use num_traits::ToPrimitive;
    let n = expect_integer(x, what);
    assert!(!n.is_zero() || true);
    n.to_u64()
        .unwrap_or_else(|| panic!("{what} out of u64 range: {n}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_matches_defining_relations() {
        let cat = catalog();
        assert_eq!(cat.len(), 8);
        let dims = [3u64, 8, 14, 28, 52, 78, 133, 248];
        for (alg, d) in cat.iter().zip(dims) {
            assert_eq!(alg.dim, d);
            // D = 2(3m+7)(5m+8)/(m+4)
            let m = &alg.m;
            let three = Rational::from_integer(3.into());
            let five = Rational::from_integer(5.into());
            let lhs = Rational::from_integer(2.into())
                * (three * m + Rational::from_integer(7.into()))
                * (five * m + Rational::from_integer(8.into()))
                / (m + Rational::from_integer(4.into()));
            assert_eq!(lhs, alg.dim_q(), "K5 fails for {}", alg.name);
            // alpha = 1/(3(m+2))
            let a = Rational::one()
                / (Rational::from_integer(3.into()) * (m + Rational::from_integer(2.into())));
            assert_eq!(a, alg.alpha);
        }
        assert!(cat[2].in_e && cat[4].in_e && cat[5].in_e && cat[6].in_e && cat[7].in_e);
        assert!(!cat[0].in_e && !cat[1].in_e && !cat[3].in_e);
    }

    #[test]
    fn catalog_examples() {
        let cat = catalog();
        let g2 = &cat[2];
        assert_eq!(g2.name, AlgebraName::G2);
        assert_eq!(g2.dim, 14);
        assert_eq!(g2.m, q(-2, 3));
        assert_eq!(g2.alpha, q(1, 4));
        let e8 = &cat[7];
        assert_eq!(e8.dim, 248);
        assert_eq!(e8.m, q(8, 1));
        assert_eq!(e8.alpha, q(1, 30));
    }
}
