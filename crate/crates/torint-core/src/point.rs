//! Torsion points of an abelian reductive group, kept as exact rational
//! exponent vectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::duality::FgAbGroup;
use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Fractional part in `[0, 1)`.
pub fn frac_part(r: &Rational) -> Rational {
    r - r.floor()
}

/// Pairing `<mu, lambda>` of an integer character with an exponent vector.
pub fn pairing(mu: &[BigInt], lambda: &[Rational]) -> Rational {
    debug_assert_eq!(mu.len(), lambda.len());
    mu.iter()
        .zip(lambda)
        .map(|(m, l)| Rational::from(m.clone()) * l)
        .sum()
}

/// A finite-order point of `T = Hom(H, C*)`: the character
/// `z -> exp(2 pi i <lambda, z>)`, stored as the canonical representative
/// with every exponent in `[0, 1)`. Exponents over torsion coordinates must
/// have denominator dividing the corresponding modulus.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TorsionPoint {
    parent: FgAbGroup,
    exponents: Vec<Rational>,
}

impl TorsionPoint {
    pub fn new(parent: &FgAbGroup, exponents: Vec<Rational>) -> Result<Self> {
        let n = parent.ambient_dim();
        if exponents.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: exponents.len(),
            });
        }
        let reduced: Vec<Rational> = exponents.iter().map(frac_part).collect();
        for (i, modulus) in parent.torsion_moduli().iter().enumerate() {
            let index = parent.free_rank() + i;
            if !(modulus % reduced[index].denom()).is_zero() {
                return Err(Error::TorsionDenominator { index });
            }
        }
        Ok(TorsionPoint {
            parent: parent.clone(),
            exponents: reduced,
        })
    }

    pub fn identity(parent: &FgAbGroup) -> Self {
        TorsionPoint {
            parent: parent.clone(),
            exponents: vec![Rational::zero(); parent.ambient_dim()],
        }
    }

    pub fn parent(&self) -> &FgAbGroup {
        &self.parent
    }

    pub fn exponents(&self) -> &[Rational] {
        &self.exponents
    }

    pub fn is_identity(&self) -> bool {
        self.exponents.iter().all(Zero::is_zero)
    }

    /// Multiplicative order: lcm of the exponent denominators.
    pub fn order(&self) -> BigInt {
        self.exponents
            .iter()
            .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()))
    }

    fn check_parent(&self, other: &TorsionPoint) -> Result<()> {
        if self.parent != other.parent {
            return Err(Error::ParentMismatch);
        }
        Ok(())
    }

    fn map_with(&self, other: &TorsionPoint, f: impl Fn(&Rational, &Rational) -> Rational) -> TorsionPoint {
        let exponents = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .map(|(a, b)| frac_part(&f(a, b)))
            .collect();
        TorsionPoint {
            parent: self.parent.clone(),
            exponents,
        }
    }

    /// Product of the two group elements.
    pub fn add(&self, other: &TorsionPoint) -> Result<TorsionPoint> {
        self.check_parent(other)?;
        Ok(self.map_with(other, |a, b| a + b))
    }

    /// Quotient of the two group elements.
    pub fn sub(&self, other: &TorsionPoint) -> Result<TorsionPoint> {
        self.check_parent(other)?;
        Ok(self.map_with(other, |a, b| a - b))
    }

    pub fn neg(&self) -> TorsionPoint {
        let exponents = self.exponents.iter().map(|a| frac_part(&-a)).collect();
        TorsionPoint {
            parent: self.parent.clone(),
            exponents,
        }
    }
}

impl std::fmt::Debug for TorsionPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.exponents.iter().map(|e| e.to_string()).collect();
        write!(f, "TorsionPoint({})", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn canonical_reduction_and_order() {
        let h = FgAbGroup::free(2);
        let p = TorsionPoint::new(&h, vec![rat(5, 4), rat(-1, 3)]).unwrap();
        assert_eq!(p.exponents(), &[rat(1, 4), rat(2, 3)]);
        assert_eq!(p.order(), BigInt::from(12));
        assert_eq!(TorsionPoint::identity(&h).order(), BigInt::one());
    }

    #[test]
    fn torsion_denominator_must_divide_modulus() {
        let h = FgAbGroup::new(1, vec![BigInt::from(4)]).unwrap();
        assert!(TorsionPoint::new(&h, vec![rat(1, 5), rat(1, 2)]).is_ok());
        assert!(matches!(
            TorsionPoint::new(&h, vec![rat(0, 1), rat(1, 3)]),
            Err(Error::TorsionDenominator { index: 1 })
        ));
    }

    #[test]
    fn group_operations_reduce() {
        let h = FgAbGroup::free(1);
        let a = TorsionPoint::new(&h, vec![rat(2, 3)]).unwrap();
        let b = TorsionPoint::new(&h, vec![rat(2, 3)]).unwrap();
        assert_eq!(a.add(&b).unwrap().exponents(), &[rat(1, 3)]);
        assert_eq!(a.sub(&b).unwrap().exponents(), &[rat(0, 1)]);
        assert_eq!(a.neg().exponents(), &[rat(1, 3)]);
    }
}
