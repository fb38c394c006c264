//! Intersections of torsion-translated algebraic subgroups.
//!
//! A coset `rho V(xi)` is stored as its torsion translation plus the defining
//! subgroup. Intersecting `k` cosets reduces to solving the congruence system
//! `<mu, x - lambda_i> in Z` over all basis characters `mu` of each subgroup;
//! the system is solvable exactly when the intersection is nonempty, and a
//! Smith-form solve produces a torsion representative within the proven order
//! bound.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::duality::{AlgSubgroupDescriptor, FgAbGroup, Subgroup};
use crate::error::{Error, Result};
use crate::lattice::{FiniteAbelianGroup, Lattice};
use crate::matrix::IntMatrix;
use crate::point::{frac_part, pairing, Rational, TorsionPoint};

/// A coset `rho V(xi)` of an algebraic subgroup of `T`.
#[derive(Clone)]
pub struct TranslatedSubgroup {
    translation: TorsionPoint,
    subgroup: Subgroup,
}

impl TranslatedSubgroup {
    pub fn new(translation: TorsionPoint, subgroup: Subgroup) -> Result<Self> {
        if translation.parent() != subgroup.parent() {
            return Err(Error::ParentMismatch);
        }
        Ok(TranslatedSubgroup {
            translation,
            subgroup,
        })
    }

    /// The subgroup `V(xi)` itself, translated by the identity.
    pub fn untranslated(subgroup: Subgroup) -> Self {
        TranslatedSubgroup {
            translation: TorsionPoint::identity(subgroup.parent()),
            subgroup,
        }
    }

    pub fn parent(&self) -> &FgAbGroup {
        self.subgroup.parent()
    }

    pub fn translation(&self) -> &TorsionPoint {
        &self.translation
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn contains(&self, point: &TorsionPoint) -> Result<bool> {
        self.subgroup.contains_point(&point.sub(&self.translation)?)
    }
}

/// Cosets have many representatives, so equality is semantic: same defining
/// subgroup and the translation difference lies on it.
impl PartialEq for TranslatedSubgroup {
    fn eq(&self, other: &Self) -> bool {
        if self.subgroup != other.subgroup {
            return false;
        }
        match self.translation.sub(&other.translation) {
            Ok(diff) => self.subgroup.contains_point(&diff).unwrap_or(false),
            Err(_) => false,
        }
    }
}

impl Eq for TranslatedSubgroup {}

impl std::fmt::Debug for TranslatedSubgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?} * V({:?})", self.translation, self.subgroup.lattice())
    }
}

/// The stacked congruence system `<mu, x> = <mu, lambda_i> (mod Z)` over
/// every basis character of every input subgroup.
pub struct CongruenceSystem {
    matrix: IntMatrix,
    rhs: Vec<Rational>,
}

fn mul_rational(m: &IntMatrix, v: &[Rational]) -> Vec<Rational> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| Rational::from(m[(i, j)].clone()) * &v[j])
                .sum()
        })
        .collect()
}

impl CongruenceSystem {
    pub fn from_cosets(cosets: &[TranslatedSubgroup]) -> Self {
        let n = cosets
            .first()
            .map_or(0, |c| c.parent().ambient_dim());
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        let mut rhs = Vec::new();
        for coset in cosets {
            for mu in coset.subgroup().lattice().basis_columns() {
                rhs.push(pairing(&mu, coset.translation().exponents()));
                rows.push(mu);
            }
        }
        let matrix = if rows.is_empty() {
            IntMatrix::zero(0, n)
        } else {
            IntMatrix::from_rows(&rows)
        };
        CongruenceSystem { matrix, rhs }
    }

    /// Order of the tuple of restricted characters: the lcm of the
    /// right-hand-side denominators.
    pub fn character_order(&self) -> BigInt {
        self.rhs
            .iter()
            .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
    }

    /// A rational solution of `M x = rhs (mod Z)`, or `None` when the system
    /// is unsolvable. With `U M V = diag(s_i)` and `c = U rhs`, solvability
    /// means the entries of `c` beyond the rank are integers, and
    /// `x = V (c_i / s_i)` solves the system.
    pub fn solve(&self) -> Option<Vec<Rational>> {
        let n = self.matrix.cols();
        let snf = self.matrix.snf();
        let c = mul_rational(&snf.u, &self.rhs);
        let mut rank = 0;
        while rank < self.matrix.rows().min(n) && !snf.s[(rank, rank)].is_zero() {
            rank += 1;
        }
        for entry in c.iter().skip(rank) {
            if !entry.is_integer() {
                return None;
            }
        }
        let mut y = vec![Rational::zero(); n];
        for i in 0..rank {
            y[i] = &c[i] / Rational::from(snf.s[(i, i)].clone());
        }
        Some(mul_rational(&snf.v, &y))
    }
}

/// Divisibility data attached to a nonempty intersection: the order of the
/// restricted-character tuple divides the representative order, which divides
/// the translation order times the component-group exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderBounds {
    pub character_order: BigInt,
    pub representative_order: BigInt,
    pub translation_order: BigInt,
    pub component_exponent: BigInt,
}

/// Outcome of an intersection query.
#[derive(Clone, Debug)]
pub struct IntersectionResult {
    pub empty: bool,
    pub representative: Option<TorsionPoint>,
    pub sum_subgroup: Subgroup,
    /// Dimension of the intersection; -1 when empty.
    pub dimension: i64,
    /// One coset `rho tau V(closure)` per irreducible component.
    pub components: Vec<TranslatedSubgroup>,
    pub order_bounds: Option<OrderBounds>,
}

fn empty_result(sum: Subgroup) -> IntersectionResult {
    IntersectionResult {
        empty: true,
        representative: None,
        sum_subgroup: sum,
        dimension: -1,
        components: Vec::new(),
        order_bounds: None,
    }
}

/// Intersect finitely many torsion-translated subgroups. Nonempty exactly
/// when the congruence system is solvable; the result is then the coset
/// `rho V(xi_1 + ... + xi_k)` with its component decomposition.
pub fn intersect_many(cosets: &[TranslatedSubgroup]) -> Result<IntersectionResult> {
    let first = cosets.first().ok_or(Error::EmptyInput)?;
    let parent = first.parent().clone();
    for c in cosets.iter().skip(1) {
        if c.parent() != &parent {
            return Err(Error::ParentMismatch);
        }
    }
    let mut sum = first.subgroup().clone();
    for c in cosets.iter().skip(1) {
        sum = sum.join(c.subgroup())?;
    }

    let system = CongruenceSystem::from_cosets(cosets);
    let Some(solution) = system.solve() else {
        return Ok(empty_result(sum));
    };
    let base = TorsionPoint::new(&parent, solution)
        .expect("congruence solutions satisfy the torsion constraints");

    // Any solution works; normalize by picking the lexicographically least
    // among the component shifts of the one we found.
    let shifts = sum.char_representatives();
    let representative = shifts
        .iter()
        .map(|t| base.add(t).expect("same parent"))
        .min()
        .expect("at least one component");

    let closure = sum.closure();
    let components: Vec<TranslatedSubgroup> = shifts
        .iter()
        .map(|t| {
            TranslatedSubgroup::new(
                representative.add(t).expect("same parent"),
                closure.clone(),
            )
            .expect("same parent")
        })
        .collect();

    debug_assert!(cosets
        .iter()
        .all(|c| c.contains(&representative).unwrap_or(false)));

    let translation_order = cosets
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(&c.translation().order()));
    let order_bounds = OrderBounds {
        character_order: system.character_order(),
        representative_order: representative.order(),
        translation_order,
        component_exponent: sum.det_group().exponent(),
    };

    Ok(IntersectionResult {
        empty: false,
        representative: Some(representative),
        dimension: (parent.ambient_dim() - sum.lattice().rank()) as i64,
        sum_subgroup: sum,
        components,
        order_bounds: Some(order_bounds),
    })
}

/// Two-coset intersection. Nonempty exactly when the translation quotient
/// lies on `V(xi_1) V(xi_2) = V(xi_1 meet xi_2)`.
pub fn intersect_two(
    a: &TranslatedSubgroup,
    b: &TranslatedSubgroup,
) -> Result<IntersectionResult> {
    if a.parent() != b.parent() {
        return Err(Error::ParentMismatch);
    }
    let meet = a.subgroup().meet(b.subgroup())?;
    let diff = a.translation().sub(b.translation())?;
    if !meet.contains_point(&diff)? {
        return Ok(empty_result(a.subgroup().join(b.subgroup())?));
    }
    let result = intersect_many(&[a.clone(), b.clone()])?;
    debug_assert!(!result.empty);
    Ok(result)
}

/// Integrality certificate for torsion-point membership in a subtorus: with
/// `chi_0` the saturation of the integer line through `lambda` and `d` the
/// maximal-minor gcd of `[chi | chi_0]`, the point `exp(2 pi i lambda)` lies
/// on `exp(chi (x) C)` exactly when `d * lambda` is integral (with `d = 0`
/// meaning `lambda` spans inside `chi (x) Q`, which always passes).
#[derive(Clone, Debug)]
pub struct VirtualMembership {
    pub belongs: bool,
    pub d: BigInt,
    /// The vector `d * lambda` whose integrality is the certificate.
    pub scaled: Vec<Rational>,
}

/// The primitive rank-one lattice `Q lambda cap Z^n` (zero if `lambda = 0`).
fn line_lattice(lambda: &[Rational]) -> Lattice {
    let n = lambda.len();
    if lambda.iter().all(Zero::is_zero) {
        return Lattice::zero(n);
    }
    let denom = lambda
        .iter()
        .fold(BigInt::one(), |acc, l| acc.lcm(l.denom()));
    let ints: Vec<BigInt> = lambda
        .iter()
        .map(|l| (l * Rational::from(denom.clone())).to_integer())
        .collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let primitive: Vec<BigInt> = ints.iter().map(|x| x / &gcd).collect();
    Lattice::from_generators(n, &[primitive]).expect("length matches")
}

/// Decide whether `lambda` virtually belongs to the primitive lattice `chi`.
/// The line lattice always contributes one column (the zero column when
/// `lambda = 0`), so `d` is the gcd of the `rank(chi) + 1` sized minors; it
/// vanishes exactly when `lambda` lies in `chi (x) Q`. The verdict is
/// invariant under integer shifts of `lambda`; the reported `d` is not,
/// because the line lattice depends on the chosen lift.
pub fn virtually_belongs(lambda: &[Rational], chi: &Lattice) -> Result<VirtualMembership> {
    let n = chi.ambient_rank();
    if lambda.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: lambda.len(),
        });
    }
    if !chi.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    let line = line_lattice(lambda);
    let line_column = if line.is_zero() {
        IntMatrix::zero(n, 1)
    } else {
        line.basis().clone()
    };
    let stacked = chi.basis().hstack(&line_column);
    let minor_size = chi.rank() + 1;
    let d = if minor_size > n {
        BigInt::zero()
    } else {
        stacked.minor_gcd(minor_size)?
    };
    let scaled: Vec<Rational> = lambda
        .iter()
        .map(|l| l * Rational::from(d.clone()))
        .collect();
    let belongs = scaled.iter().all(|x| x.is_integer());
    Ok(VirtualMembership { belongs, d, scaled })
}

/// One integrality test per character of `closure(meet)/meet`.
#[derive(Clone, Debug)]
pub struct ThmSixCheck {
    pub shift: TorsionPoint,
    pub membership: VirtualMembership,
}

/// Outcome of the arithmetic two-coset test: the per-character checks, the
/// index of the first passing one, and the intersection itself.
#[derive(Clone, Debug)]
pub struct ThmSixOutcome {
    pub checks: Vec<ThmSixCheck>,
    pub witness: Option<usize>,
    pub result: IntersectionResult,
}

/// Arithmetic route for two torsion-translated subtori of `(C*)^r`: the
/// intersection is nonempty exactly when some `lambda_1 - lambda_2 - mu_k`
/// virtually belongs to the dual of `Z^r / (xi_1 meet xi_2)`, with `mu_k`
/// running over the component characters of the meet.
pub fn intersect_two_via_thm6(
    a: &TranslatedSubgroup,
    b: &TranslatedSubgroup,
) -> Result<ThmSixOutcome> {
    thm6_with_lifts(
        a,
        b,
        &a.translation().exponents().to_vec(),
        &b.translation().exponents().to_vec(),
    )
}

/// Same decision with caller-chosen rational lifts of the two translations
/// (each lift must reduce to the stored translation mod `Z^r`). The verdict
/// is lift-independent; the reported `d` and `d * lambda` are not.
pub fn thm6_with_lifts(
    a: &TranslatedSubgroup,
    b: &TranslatedSubgroup,
    lift_a: &[Rational],
    lift_b: &[Rational],
) -> Result<ThmSixOutcome> {
    if a.parent() != b.parent() {
        return Err(Error::ParentMismatch);
    }
    let parent = a.parent();
    if !parent.is_torsion_free() {
        return Err(Error::TorsionParent);
    }
    let n = parent.ambient_dim();
    for (lift, point) in [(lift_a, a.translation()), (lift_b, b.translation())] {
        if lift.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: lift.len(),
            });
        }
        for (l, e) in lift.iter().zip(point.exponents()) {
            if &frac_part(l) != e {
                return Err(Error::Parse(
                    "lift does not reduce to the stored translation".into(),
                ));
            }
        }
    }

    let meet = a.subgroup().meet(b.subgroup())?;
    let chi = meet.lattice().dual_quotient();
    let mut checks = Vec::new();
    let mut witness = None;
    for (idx, mu) in meet.char_representatives().into_iter().enumerate() {
        let lambda: Vec<Rational> = lift_a
            .iter()
            .zip(lift_b)
            .zip(mu.exponents())
            .map(|((la, lb), m)| la - lb - m)
            .collect();
        let membership = virtually_belongs(&lambda, &chi)?;
        if membership.belongs && witness.is_none() {
            witness = Some(idx);
        }
        checks.push(ThmSixCheck {
            shift: mu,
            membership,
        });
    }

    let result = if witness.is_some() {
        intersect_many(&[a.clone(), b.clone()])?
    } else {
        empty_result(a.subgroup().join(b.subgroup())?)
    };
    debug_assert_eq!(witness.is_some(), !result.empty);
    Ok(ThmSixOutcome {
        checks,
        witness,
        result,
    })
}

/// Pairwise-intersect two unions of translated subgroups. The nonempty pair
/// intersections, in `(i, j)` lexicographic order, again form a union of
/// torsion-translated subgroups.
pub fn intersect_unions(
    first: &[TranslatedSubgroup],
    second: &[TranslatedSubgroup],
) -> Result<Vec<TranslatedSubgroup>> {
    let mut out = Vec::new();
    for a in first {
        for b in second {
            let r = intersect_two(a, b)?;
            if !r.empty {
                out.push(TranslatedSubgroup::new(
                    r.representative.expect("nonempty result has a representative"),
                    r.sum_subgroup,
                )?);
            }
        }
    }
    Ok(out)
}

/// A union of cosets is finite exactly when it is empty or every coset is
/// zero-dimensional (the defining lattice has full rank).
pub fn is_finite_intersection(cosets: &[TranslatedSubgroup]) -> bool {
    cosets
        .iter()
        .all(|c| c.subgroup().lattice().rank() == c.parent().ambient_dim())
}

/// The subgroup `xi` of `Z^n` with `V(xi) = exp(chi (x) C)`: the functionals
/// vanishing on `chi`. Always primitive, so the subtorus is connected.
pub fn exp_subtorus(chi: &Lattice) -> Subgroup {
    let parent = FgAbGroup::free(chi.ambient_rank());
    Subgroup::from_lattice(&parent, chi.dual_quotient())
        .expect("free parents have no constraints")
}

/// Intersection of the connected subtori `exp(chi_i (x) C)` as an algebraic
/// subgroup: the descriptor of `V(xi_1 + xi_2)` for the dualized quotients.
pub fn exp_intersect(chi1: &Lattice, chi2: &Lattice) -> Result<AlgSubgroupDescriptor> {
    if chi1.ambient_rank() != chi2.ambient_rank() {
        return Err(Error::AmbientMismatch {
            left: chi1.ambient_rank(),
            right: chi2.ambient_rank(),
        });
    }
    let xi = exp_subtorus(chi1).join(&exp_subtorus(chi2))?;
    Ok(xi.v_of())
}

/// Two primitive sublattices of `Z^(n + 2k)` with trivial intersection whose
/// exponential subtori intersect in `(C*)^n x A`: both contain the first `n`
/// coordinate axes, then one takes `e_(n+i)` and the other
/// `e_(n+i) + d_i e_(n+k+i)` over the invariant factors `d_i` of `A`.
pub fn dimtori_construct(n: usize, a: &FiniteAbelianGroup) -> (Lattice, Lattice, usize) {
    let k = a.invariant_factors().len();
    let ambient = n + 2 * k;
    let axis = |i: usize| {
        let mut v = vec![BigInt::zero(); ambient];
        v[i] = BigInt::one();
        v
    };
    let mut cols1: Vec<Vec<BigInt>> = (0..n).map(axis).collect();
    let mut cols2 = cols1.clone();
    for (i, d) in a.invariant_factors().iter().enumerate() {
        cols1.push(axis(n + i));
        let mut col = axis(n + i);
        col[n + k + i] = d.clone();
        cols2.push(col);
    }
    let chi1 = Lattice::from_generators(ambient, &cols1).expect("lengths match");
    let chi2 = Lattice::from_generators(ambient, &cols2).expect("lengths match");
    (chi1, chi2, ambient)
}
