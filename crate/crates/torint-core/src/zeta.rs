//! Counting algebraic subgroups with fixed identity component: the counting
//! coefficients come from a product of shifted zeta functions, realized as
//! iterated Dirichlet convolutions, with a direct Hermite-form enumerator as
//! the oracle.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::Lattice;

/// The coefficients `a_1 .. a_K` of the subgroup-counting Dirichlet series of
/// `Z^rank`: `a_k` is the number of index-`k` sublattices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaCoefficients {
    rank: usize,
    coefficients: Vec<BigInt>,
}

impl ZetaCoefficients {
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `a_k`, 1-based.
    pub fn coefficient(&self, k: usize) -> &BigInt {
        &self.coefficients[k - 1]
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }
}

/// `a_k = sum over ordered factorizations d_1 ... d_r = k of d_2 d_3^2 ...
/// d_r^(r-1)`, computed by Dirichlet-convolving the sequences `k -> k^j` for
/// `j = 0 .. r-1`.
pub fn count_sublattices(rank: usize, max_index: usize) -> ZetaCoefficients {
    assert!(max_index >= 1, "need at least one coefficient");
    // Dirichlet unit: a_1 = 1.
    let mut coeffs: Vec<BigInt> = (0..=max_index)
        .map(|k| if k == 1 { BigInt::one() } else { BigInt::zero() })
        .collect();
    for j in 0..rank {
        let mut next = vec![BigInt::zero(); max_index + 1];
        for d in 1..=max_index {
            if coeffs[d].is_zero() {
                continue;
            }
            let mut m = d;
            while m <= max_index {
                let q = BigInt::from(m / d).pow(j as u32);
                next[m] += &coeffs[d] * q;
                m += d;
            }
        }
        coeffs = next;
    }
    ZetaCoefficients {
        rank,
        coefficients: coeffs[1..].to_vec(),
    }
}

/// Counting subgroups of an `r`-torus with a fixed `n`-dimensional identity
/// component reduces to counting finite-index subgroups of the quotient
/// `Z^(r-n)`.
pub fn count_with_fixed_identity_component(
    rank: usize,
    component_rank: usize,
    max_index: usize,
) -> Result<ZetaCoefficients> {
    if component_rank > rank {
        return Err(Error::ComponentRankTooLarge {
            component: component_rank,
            ambient: rank,
        });
    }
    Ok(count_sublattices(rank - component_rank, max_index))
}

fn ordered_factorizations(k: u64, parts: usize) -> Vec<Vec<u64>> {
    if parts == 0 {
        return if k == 1 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for d in 1..=k {
        if k % d != 0 {
            continue;
        }
        for mut rest in ordered_factorizations(k / d, parts - 1) {
            rest.insert(0, d);
            out.push(rest);
        }
    }
    out
}

/// Every index-`k` sublattice of `Z^r`, each in canonical Hermite form, in
/// lexicographic order of (diagonal, below-diagonal) entries.
pub fn enumerate_hnf(rank: usize, index: u64) -> Vec<Lattice> {
    assert!(rank >= 1 && index >= 1);
    let mut out = Vec::new();
    for diagonal in ordered_factorizations(index, rank) {
        // Free entries sit at (row j, column j' < j), bounded by the
        // diagonal entry of their row; run an odometer over them.
        let slots: Vec<(usize, usize)> = (0..rank)
            .flat_map(|j| (0..j).map(move |jp| (j, jp)))
            .collect();
        let mut values = vec![0u64; slots.len()];
        let mut done = false;
        while !done {
            // Column jp: diagonal entry at row jp, free entries below at the
            // pivot rows of later columns.
            let mut columns = vec![vec![BigInt::zero(); rank]; rank];
            for (jp, d) in diagonal.iter().enumerate() {
                columns[jp][jp] = BigInt::from(*d);
            }
            for (&(j, jp), &v) in slots.iter().zip(&values) {
                columns[jp][j] = BigInt::from(v);
            }
            out.push(Lattice::from_generators(rank, &columns).expect("lengths match"));

            // Advance the odometer, last slot least significant.
            done = true;
            for pos in (0..slots.len()).rev() {
                values[pos] += 1;
                if values[pos] < diagonal[slots[pos].0] {
                    done = false;
                    break;
                }
                values[pos] = 0;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nums(values: &[u64]) -> Vec<BigInt> {
        values.iter().map(|&v| BigInt::from(v)).collect()
    }

    #[test]
    fn rank_zero_and_one() {
        let z0 = count_sublattices(0, 5);
        assert_eq!(z0.coefficients(), &nums(&[1, 0, 0, 0, 0]));
        let z1 = count_sublattices(1, 5);
        assert_eq!(z1.coefficients(), &nums(&[1, 1, 1, 1, 1]));
    }

    #[test]
    fn rank_two_is_sigma_one() {
        let z = count_sublattices(2, 6);
        assert_eq!(z.coefficients(), &nums(&[1, 3, 4, 7, 6, 12]));
    }

    #[test]
    fn fixed_identity_component_reduces_rank() {
        let z = count_with_fixed_identity_component(3, 1, 4).unwrap();
        assert_eq!(z, count_sublattices(2, 4));
        let all = count_with_fixed_identity_component(2, 2, 3).unwrap();
        assert_eq!(all.coefficients(), &nums(&[1, 0, 0]));
        assert!(count_with_fixed_identity_component(1, 2, 3).is_err());
    }

    #[test]
    fn hnf_enumeration_small_cases() {
        assert_eq!(enumerate_hnf(1, 5).len(), 1);
        assert_eq!(enumerate_hnf(2, 2).len(), 3);
        assert_eq!(enumerate_hnf(2, 3).len(), 4);
        // No duplicates: canonical forms compare field-wise.
        let lats = enumerate_hnf(2, 6);
        for (i, a) in lats.iter().enumerate() {
            for b in &lats[i + 1..] {
                assert_ne!(a, b);
            }
        }
        // Every enumerated lattice has index k.
        for l in &lats {
            assert_eq!(l.index_in_saturation(), BigInt::from(6));
        }
    }

    #[test]
    fn euler_product_sanity() {
        // a_{p^2}(Z^2) = p^2 + p + 1 for small primes.
        for p in [2u64, 3, 5, 7, 11, 13] {
            let k = (p * p) as usize;
            let z = count_sublattices(2, k);
            assert_eq!(z.coefficient(k), &BigInt::from(p * p + p + 1));
        }
    }
}
