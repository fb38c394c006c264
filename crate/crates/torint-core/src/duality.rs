//! Finitely generated abelian groups `H = Z^r + Z/k_1 + ... + Z/k_s`, their
//! subgroups, and the order-reversing dictionary between subgroups of `H` and
//! algebraic subgroups of `T = Hom(H, C*)`.
//!
//! A subgroup of `H` is represented by the sublattice of `Z^(r+s)` obtained by
//! lifting its generators and closing under the constraint lattice
//! `K = span{k_i e_(r+i)}`; this turns every subgroup question into exact
//! lattice arithmetic over `Z`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{FiniteAbelianGroup, Lattice};
use crate::matrix::IntMatrix;
use crate::point::{pairing, Rational, TorsionPoint};

/// `H = Z^free_rank + Z/k_1 + ... + Z/k_s` in invariant-factor form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FgAbGroup {
    free_rank: usize,
    torsion_moduli: Vec<BigInt>,
}

impl FgAbGroup {
    pub fn new(free_rank: usize, torsion_moduli: Vec<BigInt>) -> Result<Self> {
        for k in &torsion_moduli {
            if k < &BigInt::from(2) {
                return Err(Error::Parse(format!("torsion modulus {k} is below 2")));
            }
        }
        for w in torsion_moduli.windows(2) {
            if !(&w[1] % &w[0]).is_zero() {
                return Err(Error::Parse(format!(
                    "torsion moduli violate divisibility: {} does not divide {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(FgAbGroup {
            free_rank,
            torsion_moduli,
        })
    }

    /// The free group `Z^r`.
    pub fn free(r: usize) -> Self {
        FgAbGroup {
            free_rank: r,
            torsion_moduli: Vec::new(),
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion_moduli(&self) -> &[BigInt] {
        &self.torsion_moduli
    }

    pub fn torsion_rank(&self) -> usize {
        self.torsion_moduli.len()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion_moduli.is_empty()
    }

    /// Coordinate dimension `n = r + s` of the ambient lattice `Z^n`.
    pub fn ambient_dim(&self) -> usize {
        self.free_rank + self.torsion_moduli.len()
    }

    /// The constraint lattice `K = span{k_i e_(r+i)}`; the zero subgroup.
    pub fn constraint_lattice(&self) -> Lattice {
        let n = self.ambient_dim();
        let gens: Vec<Vec<BigInt>> = self
            .torsion_moduli
            .iter()
            .enumerate()
            .map(|(i, k)| {
                let mut v = vec![BigInt::zero(); n];
                v[self.free_rank + i] = k.clone();
                v
            })
            .collect();
        Lattice::from_generators(n, &gens).expect("constraint generators are well-formed")
    }
}

impl std::fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Z^{}", self.free_rank)?;
        for k in &self.torsion_moduli {
            write!(f, " + Z/{k}")?;
        }
        Ok(())
    }
}

/// A subgroup of `H`, carried by a lattice in `Z^(r+s)` containing the
/// constraint lattice `K`.
#[derive(Clone, PartialEq, Eq)]
pub struct Subgroup {
    parent: FgAbGroup,
    lattice: Lattice,
}

/// The exact data of an algebraic subgroup `V` of `T`: its dimension, the
/// finite group of connected components, the subgroup lattice cutting out the
/// identity component, and one torsion point per component.
#[derive(Clone, Debug)]
pub struct AlgSubgroupDescriptor {
    pub dimension: usize,
    pub component_group: FiniteAbelianGroup,
    pub identity_component: Lattice,
    pub representatives: Vec<TorsionPoint>,
}

impl Subgroup {
    /// Subgroup generated by the given elements of `H`. Torsion coordinates
    /// are residues modulo the corresponding modulus; the constraint lattice
    /// is always included, so regenerating a subgroup from its own basis is
    /// the identity.
    pub fn from_generators(parent: &FgAbGroup, generators: &[Vec<BigInt>]) -> Result<Self> {
        let n = parent.ambient_dim();
        let r = parent.free_rank();
        for g in generators {
            if g.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: g.len(),
                });
            }
            for (i, k) in parent.torsion_moduli().iter().enumerate() {
                let c = &g[r + i];
                if c.is_negative() || c >= k {
                    return Err(Error::TorsionCoordinateOutOfRange { index: r + i });
                }
            }
        }
        let mut gens: Vec<Vec<BigInt>> = generators.to_vec();
        gens.extend(parent.constraint_lattice().basis_columns());
        Ok(Subgroup {
            parent: parent.clone(),
            lattice: Lattice::from_generators(n, &gens)?,
        })
    }

    /// Wrap an existing lattice; it must contain the constraint lattice.
    pub fn from_lattice(parent: &FgAbGroup, lattice: Lattice) -> Result<Self> {
        if lattice.ambient_rank() != parent.ambient_dim() {
            return Err(Error::AmbientMismatch {
                left: lattice.ambient_rank(),
                right: parent.ambient_dim(),
            });
        }
        if !lattice.contains_lattice(&parent.constraint_lattice())? {
            return Err(Error::Parse(
                "subgroup lattice does not contain the constraint lattice".into(),
            ));
        }
        Ok(Subgroup {
            parent: parent.clone(),
            lattice,
        })
    }

    /// The zero subgroup (the constraint lattice itself).
    pub fn zero(parent: &FgAbGroup) -> Self {
        Subgroup {
            parent: parent.clone(),
            lattice: parent.constraint_lattice(),
        }
    }

    /// The whole group `H`.
    pub fn full(parent: &FgAbGroup) -> Self {
        Subgroup {
            parent: parent.clone(),
            lattice: Lattice::full(parent.ambient_dim()),
        }
    }

    pub fn parent(&self) -> &FgAbGroup {
        &self.parent
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// Rank of the subgroup as an abstract group.
    pub fn rank(&self) -> usize {
        self.lattice.rank() - self.parent.torsion_rank()
    }

    fn check_parent(&self, other: &Subgroup) -> Result<()> {
        if self.parent != other.parent {
            return Err(Error::ParentMismatch);
        }
        Ok(())
    }

    /// Primitive closure: the smallest primitive subgroup containing this
    /// one. At the lattice level this is the saturation.
    pub fn closure(&self) -> Subgroup {
        Subgroup {
            parent: self.parent.clone(),
            lattice: self.lattice.saturation(),
        }
    }

    pub fn is_primitive(&self) -> bool {
        self.lattice.is_primitive()
    }

    /// Determinant group: closure / self.
    pub fn det_group(&self) -> FiniteAbelianGroup {
        self.lattice.det_group()
    }

    /// Join (sum) in the subgroup lattice of `H`.
    pub fn join(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_parent(other)?;
        Ok(Subgroup {
            parent: self.parent.clone(),
            lattice: self.lattice.sum(&other.lattice)?,
        })
    }

    /// Meet (intersection) in the subgroup lattice of `H`.
    pub fn meet(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_parent(other)?;
        Ok(Subgroup {
            parent: self.parent.clone(),
            lattice: self.lattice.intersect(&other.lattice)?,
        })
    }

    pub fn contains_subgroup(&self, other: &Subgroup) -> Result<bool> {
        self.check_parent(other)?;
        self.lattice.contains_lattice(&other.lattice)
    }

    /// Does the point lie on `V(self)`? True iff every basis character
    /// evaluates to 1, i.e. pairs integrally with the exponent vector. The
    /// test is independent of the representative of the point.
    pub fn contains_point(&self, point: &TorsionPoint) -> Result<bool> {
        if &self.parent != point.parent() {
            return Err(Error::ParentMismatch);
        }
        Ok(self
            .lattice
            .basis_columns()
            .iter()
            .all(|mu| pairing(mu, point.exponents()).is_integer()))
    }

    /// One torsion point per irreducible component of `V(self)`: the
    /// characters of closure/self, realized via the Smith form of the basis.
    /// With `U B V = diag(s_1..s_k)`, the rows of `U` scaled by `1/s_i` pair
    /// integrally with the basis and generate the component group.
    pub fn char_representatives(&self) -> Vec<TorsionPoint> {
        let n = self.parent.ambient_dim();
        let k = self.lattice.rank();
        if k == 0 {
            return vec![TorsionPoint::identity(&self.parent)];
        }
        let snf = self.lattice.snf_of_basis();
        let mut scaled_rows: Vec<Vec<Rational>> = Vec::new();
        for i in 0..k {
            let s = &snf.s[(i, i)];
            if s > &BigInt::one() {
                scaled_rows.push(
                    (0..n)
                        .map(|j| Rational::new(snf.u[(i, j)].clone(), s.clone()))
                        .collect(),
                );
            }
        }
        let group = self.det_group();
        debug_assert_eq!(group.invariant_factors().len(), scaled_rows.len());
        group
            .elements()
            .into_iter()
            .map(|tuple| {
                let mut exps = vec![Rational::zero(); n];
                for (a, row) in tuple.iter().zip(&scaled_rows) {
                    for (e, v) in exps.iter_mut().zip(row) {
                        *e += Rational::from(a.clone()) * v;
                    }
                }
                TorsionPoint::new(&self.parent, exps)
                    .expect("component representatives are valid points")
            })
            .collect()
    }

    /// The full descriptor of the algebraic subgroup `V(self)` of `T`.
    pub fn v_of(&self) -> AlgSubgroupDescriptor {
        AlgSubgroupDescriptor {
            dimension: self.parent.ambient_dim() - self.lattice.rank(),
            component_group: self.det_group(),
            identity_component: self.lattice.saturation(),
            representatives: self.char_representatives(),
        }
    }
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subgroup(parent={:?}, {:?})", self.parent, self.lattice)
    }
}

/// Recover the defining subgroup from the descriptor of an algebraic
/// subgroup: the characters vanishing on every component. Inverse of
/// `Subgroup::v_of`.
pub fn epsilon_of(parent: &FgAbGroup, w: &AlgSubgroupDescriptor) -> Subgroup {
    let basis = w.identity_component.basis();
    let k = basis.cols();
    let reps = &w.representatives;

    // mu = M y must pair integrally with every representative: clear
    // denominators and solve R y = 0 (mod N) through an augmented kernel.
    let mut denominator = BigInt::one();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for rep in reps {
        let row: Vec<Rational> = (0..k)
            .map(|j| pairing(&basis.column(j), rep.exponents()))
            .collect();
        for entry in &row {
            denominator = denominator.lcm(entry.denom());
        }
        rows.push(row);
    }
    let t = rows.len();
    let scaled = IntMatrix::from_fn(t, k, |i, j| {
        let v = &rows[i][j] * Rational::from(denominator.clone());
        debug_assert!(v.is_integer());
        v.to_integer()
    });
    let modulus = IntMatrix::from_fn(t, t, |i, j| {
        if i == j {
            denominator.clone()
        } else {
            BigInt::zero()
        }
    });
    let kernel = scaled.hstack(&modulus).kernel();
    let coeffs = IntMatrix::from_fn(k, kernel.cols(), |i, j| kernel[(i, j)].clone());
    let lattice = Lattice::from_matrix_columns(&basis.mul(&coeffs));
    Subgroup::from_lattice(parent, lattice).expect("epsilon lattice contains the constraints")
}

/// For primitive subgroups with finite meet, the determinant group of the
/// sum of the dualized quotients equals that of the plain sum. Returns both
/// sides as invariant-factor lists.
pub fn prop_xi_pair(
    a: &Subgroup,
    b: &Subgroup,
) -> Result<(FiniteAbelianGroup, FiniteAbelianGroup)> {
    if a.parent() != b.parent() {
        return Err(Error::ParentMismatch);
    }
    if !a.is_primitive() || !b.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    let meet = a.meet(b)?;
    if meet.lattice().rank() != a.parent().torsion_rank() {
        return Err(Error::InfiniteMeet);
    }
    let dual_sum = a
        .lattice()
        .dual_quotient()
        .sum(&b.lattice().dual_quotient())?;
    let plain_sum = a.lattice().sum(b.lattice())?;
    Ok((dual_sum.det_group(), plain_sum.det_group()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(values: &[i64]) -> Vec<BigInt> {
        values.iter().map(|&v| BigInt::from(v)).collect()
    }

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn generators_close_under_constraints() {
        // H = Z with xi = 2Z.
        let h = FgAbGroup::free(1);
        let xi = Subgroup::from_generators(&h, &[big(&[2])]).unwrap();
        assert_eq!(xi.lattice().basis_columns(), vec![big(&[2])]);

        // Empty generators give the zero subgroup.
        let zero = Subgroup::from_generators(&h, &[]).unwrap();
        assert_eq!(zero, Subgroup::zero(&h));

        // H = Z + Z/4, generator (1, 2) closes to span{(1,2),(0,4)}.
        let h = FgAbGroup::new(1, vec![BigInt::from(4)]).unwrap();
        let xi = Subgroup::from_generators(&h, &[big(&[1, 2])]).unwrap();
        assert_eq!(
            xi.lattice().basis_columns(),
            vec![big(&[1, 2]), big(&[0, 4])]
        );
    }

    #[test]
    fn torsion_residues_validated() {
        let h = FgAbGroup::new(1, vec![BigInt::from(4)]).unwrap();
        assert!(matches!(
            Subgroup::from_generators(&h, &[big(&[0, 4])]),
            Err(Error::TorsionCoordinateOutOfRange { index: 1 })
        ));
        assert!(matches!(
            Subgroup::from_generators(&h, &[big(&[0, -1])]),
            Err(Error::TorsionCoordinateOutOfRange { index: 1 })
        ));
        assert!(matches!(
            Subgroup::from_generators(&h, &[big(&[1])]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn toy_duality_example() {
        // xi = 2Z inside Z: V(xi) = {±1}, closure Z, determinant group Z/2.
        let h = FgAbGroup::free(1);
        let xi = Subgroup::from_generators(&h, &[big(&[2])]).unwrap();
        let v = xi.v_of();
        assert_eq!(v.dimension, 0);
        assert_eq!(v.component_group.invariant_factors(), &[BigInt::from(2)]);
        assert_eq!(v.identity_component, Lattice::full(1));
        let exps: Vec<Vec<Rational>> = v
            .representatives
            .iter()
            .map(|p| p.exponents().to_vec())
            .collect();
        assert_eq!(exps, vec![vec![rat(0, 1)], vec![rat(1, 2)]]);
    }

    #[test]
    fn v_of_trivial_cases() {
        let h = FgAbGroup::new(1, vec![BigInt::from(4)]).unwrap();
        let all = Subgroup::zero(&h).v_of();
        assert_eq!(all.dimension, 1);
        assert_eq!(all.component_group.invariant_factors(), &[BigInt::from(4)]);

        let one = Subgroup::full(&h).v_of();
        assert_eq!(one.dimension, 0);
        assert!(one.component_group.is_trivial());
        assert_eq!(one.representatives.len(), 1);
    }

    #[test]
    fn join_meet_match_paper_example() {
        let h = FgAbGroup::free(3);
        let xi1 = Subgroup::from_generators(&h, &[big(&[1, 0, 0]), big(&[0, 1, 0])]).unwrap();
        let xi2 = Subgroup::from_generators(&h, &[big(&[1, 0, 0]), big(&[0, 0, 1])]).unwrap();
        assert_eq!(xi1.join(&xi2).unwrap(), Subgroup::full(&h));
        let meet = xi1.meet(&xi2).unwrap();
        assert_eq!(
            meet,
            Subgroup::from_generators(&h, &[big(&[1, 0, 0])]).unwrap()
        );
        assert_eq!(xi1.join(&Subgroup::zero(&h)).unwrap(), xi1);
        assert_eq!(xi1.meet(&Subgroup::full(&h)).unwrap(), xi1);
    }

    #[test]
    fn char_representatives_checkerboard() {
        // xi = span{(1,1),(1,-1)}: components at (0,0) and (1/2,1/2), found
        // independently by scanning the 4th-roots grid for z1 z2 = 1 and
        // z1 / z2 = 1.
        let h = FgAbGroup::free(2);
        let xi = Subgroup::from_generators(&h, &[big(&[1, 1]), big(&[1, -1])]).unwrap();
        let mut reps: Vec<Vec<Rational>> = xi
            .char_representatives()
            .iter()
            .map(|p| p.exponents().to_vec())
            .collect();
        reps.sort();
        assert_eq!(
            reps,
            vec![
                vec![rat(0, 1), rat(0, 1)],
                vec![rat(1, 2), rat(1, 2)]
            ]
        );
        for p in xi.char_representatives() {
            assert!(xi.contains_point(&p).unwrap());
        }
    }

    #[test]
    fn primitive_subgroup_has_single_representative() {
        let h = FgAbGroup::free(3);
        let xi = Subgroup::from_generators(&h, &[big(&[1, 0, 0])]).unwrap();
        let reps = xi.char_representatives();
        assert_eq!(reps.len(), 1);
        assert!(reps[0].is_identity());
    }

    #[test]
    fn epsilon_roundtrip() {
        let h = FgAbGroup::free(1);
        let xi = Subgroup::from_generators(&h, &[big(&[2])]).unwrap();
        assert_eq!(epsilon_of(&h, &xi.v_of()), xi);

        let zero = Subgroup::zero(&h);
        assert_eq!(epsilon_of(&h, &zero.v_of()), zero);

        // Torsion parent roundtrip.
        let h = FgAbGroup::new(1, vec![BigInt::from(4)]).unwrap();
        let xi = Subgroup::from_generators(&h, &[big(&[1, 2])]).unwrap();
        assert_eq!(epsilon_of(&h, &xi.v_of()), xi);
    }

    #[test]
    fn prop_xi_examples() {
        let h = FgAbGroup::free(2);
        let e1 = Subgroup::from_generators(&h, &[big(&[1, 0])]).unwrap();
        let e2 = Subgroup::from_generators(&h, &[big(&[0, 1])]).unwrap();
        let (lhs, rhs) = prop_xi_pair(&e1, &e2).unwrap();
        assert!(lhs.is_trivial());
        assert!(rhs.is_trivial());

        // Cyclic construction with D = diag(3): both sides Z/3.
        let chi1 = Subgroup::from_generators(&h, &[big(&[1, 0])]).unwrap();
        let chi2 = Subgroup::from_generators(&h, &[big(&[1, 3])]).unwrap();
        let (lhs, rhs) = prop_xi_pair(&chi1, &chi2).unwrap();
        assert_eq!(lhs.invariant_factors(), &[BigInt::from(3)]);
        assert_eq!(rhs.invariant_factors(), &[BigInt::from(3)]);

        // Non-primitive and infinite-meet inputs are rejected.
        let bad = Subgroup::from_generators(&h, &[big(&[2, 0])]).unwrap();
        assert!(matches!(prop_xi_pair(&bad, &e2), Err(Error::NotPrimitive)));
        assert!(matches!(prop_xi_pair(&e1, &e1), Err(Error::InfiniteMeet)));
    }
}
