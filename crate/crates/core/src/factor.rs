//! Factor congruences, direct decompositions, factorization of congruences
//! over binary products, and the Fraser–Horn checks.

use crate::algebra::{product, quotient, validate_homomorphism, FiniteAlgebra, Homomorphism,
    ProductAlgebra, QuotientAlgebra};
use crate::caps::Caps;
use crate::congruence::{self, all_congruences, cg, Congruence};
use crate::error::{Error, Result};
use crate::exec;

/// A pair of complementary factor congruences: `θ ∩ δ = Δ` and `θ ∘ δ = ∇`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorPair {
    pub theta: Congruence,
    pub delta: Congruence,
}

impl FactorPair {
    pub fn new(theta: Congruence, delta: Congruence) -> Result<FactorPair> {
        if !is_factor_pair(&theta, &delta)? {
            return Err(Error::NotAFactorPair);
        }
        Ok(FactorPair { theta, delta })
    }

    pub fn swapped(&self) -> FactorPair {
        FactorPair {
            theta: self.delta.clone(),
            delta: self.theta.clone(),
        }
    }
}

fn is_factor_pair(theta: &Congruence, delta: &Congruence) -> Result<bool> {
    Ok(theta.meet(delta)?.is_identity() && theta.compose(delta)?.is_universal())
}

/// All ordered pairs of complementary factor congruences, in canonical
/// order. Candidates are scanned over `Con(A) × Con(A)` with the cheap meet
/// test first.
pub fn factor_pairs(algebra: &FiniteAlgebra, caps: &Caps) -> Result<Vec<FactorPair>> {
    let cons = all_congruences(algebra, caps)?;
    let k = cons.len();
    let pairs: Vec<Option<FactorPair>> = exec::map_collect(k * k, |index| {
        let (i, j) = (index / k, index % k);
        let (theta, delta) = (&cons[i], &cons[j]);
        if theta.meet(delta).ok()?.is_identity()
            && theta.compose(delta).ok()?.is_universal()
        {
            Some(FactorPair {
                theta: theta.clone(),
                delta: delta.clone(),
            })
        } else {
            None
        }
    });
    Ok(pairs.into_iter().flatten().collect())
}

/// A direct decomposition `A ≅ A/θ × A/δ` with the witnessing isomorphism.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub left: QuotientAlgebra,
    pub right: QuotientAlgebra,
    pub product: ProductAlgebra,
    pub iso: Homomorphism,
}

/// Decomposes along a factor pair: `a ↦ (a/θ, a/δ)` is bijective, its
/// inverse given by solving the system `(θ, δ, x, y)`.
pub fn decompose(algebra: &FiniteAlgebra, pair: &FactorPair) -> Result<Decomposition> {
    let left = quotient(algebra, &pair.theta)?;
    let right = quotient(algebra, &pair.delta)?;
    let prod = product(&[&left.algebra, &right.algebra])?;
    let map: Vec<usize> = (0..algebra.size)
        .map(|a| prod.encode(&[left.canonical.apply(a), right.canonical.apply(a)]))
        .collect();
    let iso = validate_homomorphism(algebra, &prod.algebra, map)?;
    // Guaranteed by the FactorPair invariants; check anyway so a broken
    // input surfaces here rather than downstream.
    if !iso.is_bijective() {
        return Err(Error::BijectionFailure);
    }
    for x in 0..left.algebra.size {
        for y in 0..right.algebra.size {
            let sys = [
                (pair.theta.clone(), left.blocks[x][0]),
                (pair.delta.clone(), right.blocks[y][0]),
            ];
            let back = congruence::solutions(algebra.size, &sys);
            debug_assert_eq!(back.len(), 1);
            if iso.apply(back[0]) != prod.encode(&[x, y]) {
                return Err(Error::BijectionFailure);
            }
        }
    }
    Ok(Decomposition {
        left,
        right,
        product: prod,
        iso,
    })
}

/// Tries to split a congruence on `A × B` into coordinate congruences with
/// `δ = δ₁ × δ₂`; `None` when the congruence is skew. The candidate
/// projections take `δ₁ = {(a, c) | ((a,b),(c,b)) ∈ δ for some b}` and
/// symmetrically, then the product is compared with `δ` exhaustively.
pub fn factorize(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    delta: &Congruence,
) -> Result<Option<(Congruence, Congruence)>> {
    let prod = product(&[a, b])?;
    if delta.size() != prod.algebra.size {
        return Err(Error::BaseMismatch {
            left: prod.algebra.size,
            right: delta.size(),
        });
    }
    let encode = |x: usize, y: usize| prod.encode(&[x, y]);

    let mut left_uf: Vec<usize> = (0..a.size).collect();
    for x in 0..a.size {
        for y in 0..a.size {
            if (0..b.size).any(|w| delta.related(encode(x, w), encode(y, w))) {
                let (rx, ry) = (left_uf[x].min(left_uf[y]), left_uf[x].max(left_uf[y]));
                for r in left_uf.iter_mut() {
                    if *r == ry {
                        *r = rx;
                    }
                }
            }
        }
    }
    let delta1 = Congruence::from_classes(a.size, |x| left_uf[x]);

    let mut right_uf: Vec<usize> = (0..b.size).collect();
    for x in 0..b.size {
        for y in 0..b.size {
            if (0..a.size).any(|w| delta.related(encode(w, x), encode(w, y))) {
                let (rx, ry) = (right_uf[x].min(right_uf[y]), right_uf[x].max(right_uf[y]));
                for r in right_uf.iter_mut() {
                    if *r == ry {
                        *r = rx;
                    }
                }
            }
        }
    }
    let delta2 = Congruence::from_classes(b.size, |x| right_uf[x]);

    let matches = exec::all_of(prod.algebra.size * prod.algebra.size, |index| {
        let (p, q) = (index / prod.algebra.size, index % prod.algebra.size);
        let (pc, qc) = (prod.decode(p), prod.decode(q));
        delta.related(p, q)
            == (delta1.related(pc[0], qc[0]) && delta2.related(pc[1], qc[1]))
    });
    Ok(matches.then_some((delta1, delta2)))
}

/// Product congruence `δ₁ × δ₂` under the row-major pairing.
pub fn product_congruence(
    prod: &ProductAlgebra,
    delta1: &Congruence,
    delta2: &Congruence,
) -> Congruence {
    let d2 = delta2.size();
    Congruence::from_classes(prod.algebra.size, |x| {
        let coords = prod.decode(x);
        delta1.rep()[coords[0]] * d2 + delta2.rep()[coords[1]]
    })
}

/// The three Fraser–Horn verdicts for a binary product; they agree on every
/// pair of algebras, and the report keeps the first counterexample when the
/// property fails.
#[derive(Debug, Clone)]
pub struct FhpReport {
    /// (i) every congruence of `A × B` factorizes
    pub all_factorize: bool,
    /// (ii) `Π₁ ∩ (Π₂ ∨ γ) ⊆ γ` and `Π₂ ∩ (Π₁ ∨ γ) ⊆ γ` for every `γ`
    pub pi_inequalities: bool,
    /// (iii) every principal congruence of `A × B` is the product of the
    /// coordinate principal congruences
    pub principal_products: bool,
    /// first congruence falsifying (i), in canonical enumeration order
    pub witness: Option<Congruence>,
    pub congruence_count: usize,
}

impl FhpReport {
    pub fn holds(&self) -> bool {
        self.all_factorize && self.pi_inequalities && self.principal_products
    }

    pub fn verdicts_agree(&self) -> bool {
        self.all_factorize == self.pi_inequalities
            && self.pi_inequalities == self.principal_products
    }
}

/// Runs all three Fraser–Horn characterizations on `A × B`.
pub fn check_fhp(a: &FiniteAlgebra, b: &FiniteAlgebra, caps: &Caps) -> Result<FhpReport> {
    let prod = product(&[a, b])?;
    if prod.algebra.size > caps.product {
        return Err(Error::ProductCap {
            size: prod.algebra.size,
            cap: caps.product,
        });
    }
    let cons = all_congruences(&prod.algebra, caps)?;

    let factorizations: Vec<Option<(Congruence, Congruence)>> = cons
        .iter()
        .map(|gamma| factorize(a, b, gamma))
        .collect::<Result<_>>()?;
    let witness = cons
        .iter()
        .zip(&factorizations)
        .find(|(_, f)| f.is_none())
        .map(|(gamma, _)| gamma.clone());
    let all_factorize = witness.is_none();

    let pi1 = prod.projections[0].kernel();
    let pi2 = prod.projections[1].kernel();
    let mut pi_inequalities = true;
    for gamma in &cons {
        let lhs1 = pi1.meet(&congruence::join(&prod.algebra, &pi2, gamma)?)?;
        let lhs2 = pi2.meet(&congruence::join(&prod.algebra, &pi1, gamma)?)?;
        if !lhs1.leq(gamma) || !lhs2.leq(gamma) {
            pi_inequalities = false;
            break;
        }
    }

    let n = prod.algebra.size;
    let principal_products = exec::all_of(n * n, |index| {
        let (p, q) = (index / n, index % n);
        let (pc, qc) = (prod.decode(p), prod.decode(q));
        let on_product = cg(&prod.algebra, &[(p, q)]);
        let on_a = cg(a, &[(pc[0], qc[0])]);
        let on_b = cg(b, &[(pc[1], qc[1])]);
        on_product == product_congruence(&prod, &on_a, &on_b)
    });

    Ok(FhpReport {
        all_factorize,
        pi_inequalities,
        principal_products,
        witness,
        congruence_count: cons.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn trivial_algebra_has_one_factor_pair() {
        let caps = Caps::default();
        let t = fixtures::trivial().unwrap();
        let pairs = factor_pairs(&t, &caps).unwrap();
        assert_eq!(pairs.len(), 1);
        assert!(pairs[0].theta.is_universal());
    }

    #[test]
    fn diamond_has_exactly_four_factor_pairs() {
        let caps = Caps::default();
        let d = fixtures::two_by_two_lattice().unwrap();
        let pairs = factor_pairs(&d, &caps).unwrap();
        assert_eq!(pairs.len(), 4);
        let k1 = cg(&d, &[(0, 1)]);
        let k2 = cg(&d, &[(0, 2)]);
        let expect = |theta: &Congruence, delta: &Congruence| {
            assert!(pairs
                .iter()
                .any(|p| &p.theta == theta && &p.delta == delta));
        };
        expect(&Congruence::identity(4), &Congruence::universal(4));
        expect(&Congruence::universal(4), &Congruence::identity(4));
        expect(&k1, &k2);
        expect(&k2, &k1);
    }

    #[test]
    fn m3_is_directly_indecomposable() {
        let caps = Caps::default();
        let d = fixtures::m3_lattice().unwrap();
        let pairs = factor_pairs(&d, &caps).unwrap();
        assert_eq!(pairs.len(), 2);
        assert!(pairs
            .iter()
            .all(|p| p.theta.is_identity() || p.theta.is_universal()));
    }

    #[test]
    fn factor_pairs_permute() {
        let caps = Caps::default();
        for alg in [
            fixtures::two_by_two_lattice().unwrap(),
            fixtures::power_meet_semilattice(3).unwrap(),
            fixtures::zmod(6).unwrap(),
        ] {
            for pair in factor_pairs(&alg, &caps).unwrap() {
                assert!(pair.theta.permutes(&pair.delta).unwrap());
            }
        }
    }

    #[test]
    fn decompose_against_trivial_pair() {
        let d = fixtures::two_by_two_lattice().unwrap();
        let pair = FactorPair::new(Congruence::identity(4), Congruence::universal(4)).unwrap();
        let dec = decompose(&d, &pair).unwrap();
        assert_eq!(dec.left.algebra.size, 4);
        assert_eq!(dec.right.algebra.size, 1);
        assert!(dec.iso.is_bijective());
    }

    #[test]
    fn decompose_diamond_into_two_chains() {
        let d = fixtures::two_by_two_lattice().unwrap();
        let pair = FactorPair::new(cg(&d, &[(0, 1)]), cg(&d, &[(0, 2)])).unwrap();
        let dec = decompose(&d, &pair).unwrap();
        assert_eq!(dec.left.algebra.size, 2);
        assert_eq!(dec.right.algebra.size, 2);
    }

    #[test]
    fn decompose_cube_into_two_and_square() {
        let cube = fixtures::power_meet_semilattice(3).unwrap();
        // kernel of the first projection and of the complementary projection
        let theta = Congruence::from_classes(8, |x| x >> 2);
        let delta = Congruence::from_classes(8, |x| x & 0b011);
        let pair = FactorPair::new(theta, delta).unwrap();
        let dec = decompose(&cube, &pair).unwrap();
        assert_eq!(dec.left.algebra.size, 2);
        assert_eq!(dec.right.algebra.size, 4);
    }

    #[test]
    fn factorize_identity_and_universal() {
        let two = fixtures::chain_join_semilattice(2).unwrap();
        let prod_size = 4;
        let (d1, d2) = factorize(&two, &two, &Congruence::identity(prod_size))
            .unwrap()
            .unwrap();
        assert!(d1.is_identity() && d2.is_identity());
        let (d1, d2) = factorize(&two, &two, &Congruence::universal(prod_size))
            .unwrap()
            .unwrap();
        assert!(d1.is_universal() && d2.is_universal());
    }

    #[test]
    fn join_semilattice_skew_congruence_does_not_factorize() {
        let two = fixtures::chain_join_semilattice(2).unwrap();
        let prod = product(&[&two, &two]).unwrap();
        // γ = θ((1,0),(1,1))
        let gamma = cg(&prod.algebra, &[(2, 3)]);
        assert_eq!(gamma.rep(), &[0, 1, 2, 2]);
        assert!(factorize(&two, &two, &gamma).unwrap().is_none());
    }

    #[test]
    fn factor_congruences_factorize_even_where_fhp_fails() {
        // bounded join semilattices lack the Fraser–Horn property but still
        // have factorable factor congruences
        let caps = Caps::default();
        let two = fixtures::chain_join_semilattice(2).unwrap();
        let prod = product(&[&two, &two]).unwrap();
        assert!(!check_fhp(&two, &two, &caps).unwrap().holds());
        for pair in factor_pairs(&prod.algebra, &caps).unwrap() {
            assert!(factorize(&two, &two, &pair.theta).unwrap().is_some());
        }
    }

    #[test]
    fn fhp_holds_for_the_two_chain_lattice_square() {
        let caps = Caps::default();
        let two = fixtures::chain_lattice(2).unwrap();
        let report = check_fhp(&two, &two, &caps).unwrap();
        assert!(report.holds());
        assert!(report.verdicts_agree());
        assert!(report.witness.is_none());
    }

    #[test]
    fn fhp_fails_for_the_join_semilattice_square() {
        let caps = Caps::default();
        let two = fixtures::chain_join_semilattice(2).unwrap();
        let report = check_fhp(&two, &two, &caps).unwrap();
        assert!(!report.holds());
        assert!(report.verdicts_agree());
        assert!(report.witness.is_some());
    }

    #[test]
    fn fhp_with_a_trivial_factor() {
        let caps = Caps::default();
        let t = fixtures::trivial().unwrap();
        let b = fixtures::chain_lattice(3).unwrap();
        let report = check_fhp(&t, &b, &caps).unwrap();
        assert!(report.holds());
    }
}
