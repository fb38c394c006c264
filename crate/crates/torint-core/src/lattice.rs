//! Sublattices of `Z^n` in canonical basis form, together with the finite
//! abelian groups that measure their failure to be primitive.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// A sublattice of `Z^n`, stored as the unique column Hermite normal form of
/// its basis. Equal lattices compare equal field-wise.
#[derive(Clone, PartialEq, Eq)]
pub struct Lattice {
    ambient: usize,
    basis: IntMatrix,
}

/// Finite abelian group in invariant-factor form: `d_1 | d_2 | ...`, every
/// factor at least 2. The empty list is the trivial group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    invariant_factors: Vec<BigInt>,
}

impl Lattice {
    /// Lattice spanned by the given vectors. Dependent and zero generators
    /// are allowed; the stored basis is the canonical HNF with zero columns
    /// dropped.
    pub fn from_generators(ambient: usize, generators: &[Vec<BigInt>]) -> Result<Self> {
        for g in generators {
            if g.len() != ambient {
                return Err(Error::LengthMismatch {
                    expected: ambient,
                    found: g.len(),
                });
            }
        }
        let raw = IntMatrix::from_columns(ambient, generators);
        Ok(Self::from_matrix_columns(&raw))
    }

    /// Lattice spanned by the columns of `m`.
    pub fn from_matrix_columns(m: &IntMatrix) -> Self {
        let (h, _) = m.hnf();
        let cols: Vec<Vec<BigInt>> = (0..h.cols())
            .map(|j| h.column(j))
            .filter(|c| c.iter().any(|x| !x.is_zero()))
            .collect();
        Lattice {
            ambient: m.rows(),
            basis: IntMatrix::from_columns(m.rows(), &cols),
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Lattice {
            ambient,
            basis: IntMatrix::zero(ambient, 0),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Lattice {
            ambient,
            basis: IntMatrix::identity(ambient),
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    /// Canonical basis, one column per basis vector.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis_columns(&self) -> Vec<Vec<BigInt>> {
        self.basis.columns()
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0
    }

    fn check_ambient(&self, other: &Lattice) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        Ok(())
    }

    /// Integer coordinates of `x` in the basis, if `x` lies in the lattice.
    /// Back-substitution against the column-echelon basis: each column's
    /// pivot row determines its coefficient.
    pub fn coordinates(&self, x: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
        if x.len() != self.ambient {
            return Err(Error::LengthMismatch {
                expected: self.ambient,
                found: x.len(),
            });
        }
        let mut residual = x.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for j in 0..self.rank() {
            let pivot_row = (0..self.ambient)
                .find(|&i| !self.basis[(i, j)].is_zero())
                .expect("basis columns are nonzero");
            let pivot = &self.basis[(pivot_row, j)];
            let (q, r) = residual[pivot_row].div_rem(pivot);
            if !r.is_zero() {
                return Ok(None);
            }
            for i in 0..self.ambient {
                let v = &residual[i] - &q * &self.basis[(i, j)];
                residual[i] = v;
            }
            coords.push(q);
        }
        if residual.iter().all(Zero::is_zero) {
            Ok(Some(coords))
        } else {
            Ok(None)
        }
    }

    /// Membership test: is `x` an integer combination of the basis?
    pub fn contains(&self, x: &[BigInt]) -> Result<bool> {
        Ok(self.coordinates(x)?.is_some())
    }

    pub fn contains_lattice(&self, other: &Lattice) -> Result<bool> {
        self.check_ambient(other)?;
        for c in other.basis_columns() {
            if !self.contains(&c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Lattice sum (join in the subgroup lattice).
    pub fn sum(&self, other: &Lattice) -> Result<Lattice> {
        self.check_ambient(other)?;
        Ok(Lattice::from_matrix_columns(&self.basis.hstack(&other.basis)))
    }

    /// Lattice intersection (meet), via the kernel of `[B1 | -B2]`.
    pub fn intersect(&self, other: &Lattice) -> Result<Lattice> {
        self.check_ambient(other)?;
        let neg = IntMatrix::from_fn(self.ambient, other.rank(), |i, j| -other.basis[(i, j)].clone());
        let stacked = self.basis.hstack(&neg);
        let ker = stacked.kernel();
        // First block of each kernel vector gives coefficients in B1.
        let firsts = IntMatrix::from_fn(self.rank(), ker.cols(), |i, j| ker[(i, j)].clone());
        Ok(Lattice::from_matrix_columns(&self.basis.mul(&firsts)))
    }

    /// Primitive closure: all `x` with a positive multiple in the lattice.
    /// With `U * B * V = diag(s_1..s_k)`, the closure is spanned by the first
    /// `k` columns of `U^{-1}`.
    pub fn saturation(&self) -> Lattice {
        if self.rank() == 0 {
            return self.clone();
        }
        let snf = self.basis.snf();
        let uinv = snf.u.unimodular_inverse();
        let cols: Vec<Vec<BigInt>> = (0..self.rank()).map(|j| uinv.column(j)).collect();
        Lattice::from_generators(self.ambient, &cols).expect("column lengths match")
    }

    pub fn is_primitive(&self) -> bool {
        self.det_group().is_trivial()
    }

    /// Determinant group `saturation(L)/L`: the Smith invariant factors of the
    /// basis that exceed 1.
    pub fn det_group(&self) -> FiniteAbelianGroup {
        let snf = self.basis.snf();
        let diag: Vec<BigInt> = (0..self.rank()).map(|i| snf.s[(i, i)].clone()).collect();
        FiniteAbelianGroup::from_diagonal(&diag)
    }

    /// Index of the lattice in its saturation.
    pub fn index_in_saturation(&self) -> BigInt {
        self.det_group().order()
    }

    /// The dual of `Z^n / L` identified inside `(Z^n)^dual ~ Z^n`: all
    /// functionals vanishing on the lattice. Always primitive, of rank
    /// `n - rank(L)`.
    pub fn dual_quotient(&self) -> Lattice {
        let ker = self.basis.transpose().kernel();
        Lattice::from_matrix_columns(&ker)
    }

    /// Smith data of the basis: `(diagonal, rows of U scaled into the dual)`.
    /// Exposed for component-representative construction.
    pub fn snf_of_basis(&self) -> crate::matrix::SnfResult {
        self.basis.snf()
    }
}

impl std::fmt::Debug for Lattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Lattice(ambient={}, basis={:?})", self.ambient, self.basis)
    }
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        FiniteAbelianGroup {
            invariant_factors: Vec::new(),
        }
    }

    /// Normalizes a diagonal (already a divisibility chain, possibly with 1s)
    /// into invariant factors.
    pub fn from_diagonal(diag: &[BigInt]) -> Self {
        let factors: Vec<BigInt> = diag
            .iter()
            .map(Signed::abs)
            .filter(|d| d > &BigInt::one())
            .collect();
        for w in factors.windows(2) {
            debug_assert!((&w[1] % &w[0]).is_zero(), "diagonal is not a chain");
        }
        FiniteAbelianGroup {
            invariant_factors: factors,
        }
    }

    pub fn from_invariant_factors(factors: &[BigInt]) -> Result<Self> {
        for f in factors {
            if f < &BigInt::from(2) {
                return Err(Error::Parse(format!("invariant factor {f} is below 2")));
            }
        }
        for w in factors.windows(2) {
            if !(&w[1] % &w[0]).is_zero() {
                return Err(Error::Parse(format!(
                    "invariant factors violate divisibility: {} does not divide {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(FiniteAbelianGroup {
            invariant_factors: factors.to_vec(),
        })
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    /// Largest order of an element: the last invariant factor, or 1.
    pub fn exponent(&self) -> BigInt {
        self.invariant_factors
            .last()
            .cloned()
            .unwrap_or_else(BigInt::one)
    }

    /// All elements as residue tuples, odometer order, most significant
    /// factor last. The trivial group yields the single empty tuple.
    pub fn elements(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![Vec::new()];
        for d in &self.invariant_factors {
            let mut next = Vec::new();
            for prefix in &out {
                let mut a = BigInt::zero();
                while &a < d {
                    let mut t = prefix.clone();
                    t.push(a.clone());
                    next.push(t);
                    a += 1;
                }
            }
            out = next;
        }
        out
    }
}

impl std::fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(ambient: usize, gens: &[Vec<i64>]) -> Lattice {
        let gens: Vec<Vec<BigInt>> = gens
            .iter()
            .map(|g| g.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Lattice::from_generators(ambient, &gens).unwrap()
    }

    #[test]
    fn canonical_equality() {
        let a = lat(2, &[vec![2, 0], vec![0, 1], vec![1, 1]]);
        let b = Lattice::full(2);
        assert_eq!(a, b);
    }

    #[test]
    fn sum_examples() {
        let l = lat(2, &[vec![1, 1]]);
        assert_eq!(l.sum(&Lattice::zero(2)).unwrap(), l);
        let e1 = lat(2, &[vec![1, 0]]);
        let e2 = lat(2, &[vec![0, 1]]);
        assert_eq!(e1.sum(&e2).unwrap(), Lattice::full(2));
        let a = lat(2, &[vec![2, 0]]);
        let b = lat(2, &[vec![0, 2]]);
        let s = a.sum(&b).unwrap();
        assert_eq!(s, lat(2, &[vec![2, 0], vec![0, 2]]));
        assert_eq!(s.index_in_saturation(), BigInt::from(4));
    }

    #[test]
    fn intersect_examples() {
        let l = lat(2, &[vec![2, 0], vec![0, 1]]);
        assert_eq!(l.intersect(&l).unwrap(), l);
        let e1 = lat(2, &[vec![1, 0]]);
        let e2 = lat(2, &[vec![0, 1]]);
        assert!(e1.intersect(&e2).unwrap().is_zero());
        // Brute scan of multiples of (1,1): only even multiples land in the
        // first lattice, so the meet is span{(2,2)}.
        let diag = lat(2, &[vec![1, 1]]);
        assert_eq!(l.intersect(&diag).unwrap(), lat(2, &[vec![2, 2]]));
    }

    #[test]
    fn ambient_mismatch_is_rejected() {
        let a = lat(2, &[vec![1, 0]]);
        let b = lat(3, &[vec![1, 0, 0]]);
        assert!(matches!(a.sum(&b), Err(Error::AmbientMismatch { .. })));
        assert!(matches!(a.intersect(&b), Err(Error::AmbientMismatch { .. })));
    }

    #[test]
    fn saturation_examples() {
        // 2Z inside Z saturates to Z.
        assert_eq!(lat(1, &[vec![2]]).saturation(), Lattice::full(1));
        // Primitive lattices are fixed.
        let p = lat(3, &[vec![1, 0, 0], vec![0, 1, 2]]);
        assert_eq!(p.saturation(), p);
        // Smallest positive multiple of (1,1) with (2,2)/m integral is m = 2.
        assert_eq!(lat(2, &[vec![2, 2]]).saturation(), lat(2, &[vec![1, 1]]));
    }

    #[test]
    fn det_group_examples() {
        assert_eq!(
            lat(1, &[vec![2]]).det_group().invariant_factors(),
            &[BigInt::from(2)]
        );
        assert!(lat(2, &[vec![1, 0]]).det_group().is_trivial());
        // chi1 + chi2 with D = diag(2,4) in Z^4.
        let sum = lat(
            4,
            &[vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![1, 0, 2, 0], vec![0, 1, 0, 4]],
        );
        assert_eq!(
            sum.det_group().invariant_factors(),
            &[BigInt::from(2), BigInt::from(4)]
        );
    }

    #[test]
    fn dual_quotient_examples() {
        // span(e1) in Z^3 -> span(e2*, e3*).
        let e1 = lat(3, &[vec![1, 0, 0]]);
        assert_eq!(
            e1.dual_quotient(),
            lat(3, &[vec![0, 1, 0], vec![0, 0, 1]])
        );
        assert!(Lattice::full(2).dual_quotient().is_zero());
        assert!(lat(1, &[vec![2]]).dual_quotient().is_zero());
    }

    #[test]
    fn membership_examples() {
        let l = lat(2, &[vec![2, 0], vec![0, 1]]);
        assert!(l.contains(&[BigInt::zero(), BigInt::zero()]).unwrap());
        assert!(l.contains(&[BigInt::from(2), BigInt::from(2)]).unwrap());
        let diag = lat(2, &[vec![2, 2]]);
        assert!(!diag.contains(&[BigInt::one(), BigInt::one()]).unwrap());
        assert!(matches!(
            l.contains(&[BigInt::one()]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn zero_rank_everywhere() {
        let z = Lattice::zero(3);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.saturation(), z);
        assert!(z.det_group().is_trivial());
        assert_eq!(z.dual_quotient(), Lattice::full(3));
        assert!(z.contains(&vec![BigInt::zero(); 3]).unwrap());
        assert!(!z.contains(&[BigInt::one(), BigInt::zero(), BigInt::zero()]).unwrap());
    }

    #[test]
    fn finite_group_basics() {
        let g = FiniteAbelianGroup::from_invariant_factors(&[BigInt::from(2), BigInt::from(4)])
            .unwrap();
        assert_eq!(g.order(), BigInt::from(8));
        assert_eq!(g.exponent(), BigInt::from(4));
        assert_eq!(g.elements().len(), 8);
        assert!(FiniteAbelianGroup::from_invariant_factors(&[
            BigInt::from(2),
            BigInt::from(3)
        ])
        .is_err());
        assert_eq!(FiniteAbelianGroup::trivial().order(), BigInt::one());
        assert_eq!(FiniteAbelianGroup::trivial().exponent(), BigInt::one());
    }
}
