//! Central elements and their Boolean algebra, the determining-property and
//! principal-congruence checks, homomorphism preservation analysis, and the
//! exhaustive verification of candidate coordinate-detecting formulas.
//!
//! A central element of `A` is a tuple `e⃗ ∈ A^m` carried to `[0⃗, 1⃗]` by
//! some direct decomposition. On finite evidence it is recovered from an
//! ordered factor pair `(θ, δ)` as the unique solution of the systems
//! `(e_i, 0_i) ∈ θ`, `(e_i, 1_i) ∈ δ`; the pair `(θ_{0⃗,e⃗}, θ_{1⃗,e⃗})`
//! is stored with the element, making the Boolean structure table lookups.

use crate::algebra::{check_zero_one, product, FiniteAlgebra, Homomorphism};
use crate::caps::Caps;
use crate::congruence::{self, cg_tuples, Congruence};
use crate::error::{Error, Result};
use crate::exec;
use crate::factor::{factor_pairs, FactorPair};
use crate::formula::PCFormula;

/// A central element with its witnessing factor pair: `theta0 = θ_{0⃗,e⃗}`
/// (relating `e⃗` to `0⃗`) and `theta1 = θ_{1⃗,e⃗}` (relating `e⃗` to `1⃗`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralElement {
    pub tuple: Vec<usize>,
    pub theta0: Congruence,
    pub theta1: Congruence,
}

/// The Boolean algebra `Z(A)` with precomputed operation tables over the
/// element indices; elements are sorted by their tuples.
#[derive(Debug, Clone)]
pub struct CentralAlgebra {
    pub elements: Vec<CentralElement>,
    pub meet: Vec<usize>,
    pub join: Vec<usize>,
    pub complement: Vec<usize>,
    pub bottom: usize,
    pub top: usize,
}

impl CentralAlgebra {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, tuple: &[usize]) -> Option<usize> {
        self.elements
            .binary_search_by(|e| e.tuple.as_slice().cmp(tuple))
            .ok()
    }

    pub fn meet_of(&self, i: usize, j: usize) -> usize {
        self.meet[i * self.len() + j]
    }

    pub fn join_of(&self, i: usize, j: usize) -> usize {
        self.join[i * self.len() + j]
    }

    pub fn complement_of(&self, i: usize) -> usize {
        self.complement[i]
    }

    /// Boolean order via the stored witnesses: `e ≤ f ⇔ θ_{0,e} ⊆ θ_{0,f}`.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.elements[i].theta0.leq(&self.elements[j].theta0)
    }

    /// `e ⋄ f`: the two tuples are a complementary central pair.
    pub fn complementary(&self, i: usize, j: usize) -> bool {
        self.complement[i] == j
    }
}

fn unique_solution(size: usize, entries: &[(Congruence, usize)]) -> Result<usize> {
    let found = congruence::solutions(size, entries);
    match found.as_slice() {
        [x] => Ok(*x),
        [] => Err(Error::NoSolution),
        _ => Err(Error::AmbiguousSolution),
    }
}

fn element_from_pair(algebra: &FiniteAlgebra, pair: &FactorPair) -> Result<CentralElement> {
    let tuple = algebra
        .zero
        .iter()
        .zip(&algebra.one)
        .map(|(&z, &o)| {
            unique_solution(
                algebra.size,
                &[(pair.theta.clone(), z), (pair.delta.clone(), o)],
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CentralElement {
        tuple,
        theta0: pair.theta.clone(),
        theta1: pair.delta.clone(),
    })
}

/// Builds `Z(A)` from the factor pairs and verifies the bijection with
/// `FC(A)` on the way. Requires the zero-one collapse property.
pub fn central_elements(algebra: &FiniteAlgebra, caps: &Caps) -> Result<CentralAlgebra> {
    if algebra.size > caps.carrier {
        return Err(Error::CarrierCap {
            size: algebra.size,
            cap: caps.carrier,
        });
    }
    if !check_zero_one(algebra) {
        return Err(Error::ZeroOneCollapse);
    }
    let pairs = factor_pairs(algebra, caps)?;
    let mut elements: Vec<CentralElement> = pairs
        .iter()
        .map(|pair| element_from_pair(algebra, pair))
        .collect::<Result<_>>()?;
    elements.sort_by(|a, b| a.tuple.cmp(&b.tuple));
    if elements.windows(2).any(|w| w[0].tuple == w[1].tuple) {
        return Err(Error::BijectionFailure);
    }
    // Round-trip of the bijection: each stored witness pair must recover its
    // element, and factor congruences are exhausted by the elements.
    if elements.len() != pairs.len() {
        return Err(Error::BijectionFailure);
    }

    let k = elements.len();
    let mut meet = vec![0; k * k];
    let mut join = vec![0; k * k];
    let mut complement = vec![0; k];
    for i in 0..k {
        let e = &elements[i];
        let comp_tuple = algebra
            .zero
            .iter()
            .zip(&algebra.one)
            .map(|(&z, &o)| {
                unique_solution(
                    algebra.size,
                    &[(e.theta0.clone(), o), (e.theta1.clone(), z)],
                )
            })
            .collect::<Result<Vec<_>>>()?;
        complement[i] = lookup(&elements, &comp_tuple)?;
        for j in 0..k {
            let f = &elements[j];
            let meet0 = e.theta0.meet(&f.theta0)?;
            let meet1 = congruence::join(algebra, &e.theta1, &f.theta1)?;
            let meet_tuple = algebra
                .zero
                .iter()
                .zip(&algebra.one)
                .map(|(&z, &o)| {
                    unique_solution(algebra.size, &[(meet0.clone(), z), (meet1.clone(), o)])
                })
                .collect::<Result<Vec<_>>>()?;
            meet[i * k + j] = lookup(&elements, &meet_tuple)?;
            let join0 = congruence::join(algebra, &e.theta0, &f.theta0)?;
            let join1 = e.theta1.meet(&f.theta1)?;
            let join_tuple = algebra
                .zero
                .iter()
                .zip(&algebra.one)
                .map(|(&z, &o)| {
                    unique_solution(algebra.size, &[(join0.clone(), z), (join1.clone(), o)])
                })
                .collect::<Result<Vec<_>>>()?;
            join[i * k + j] = lookup(&elements, &join_tuple)?;
        }
    }
    let bottom = lookup(&elements, &algebra.zero)?;
    let top = lookup(&elements, &algebra.one)?;
    Ok(CentralAlgebra {
        elements,
        meet,
        join,
        complement,
        bottom,
        top,
    })
}

fn lookup(elements: &[CentralElement], tuple: &[usize]) -> Result<usize> {
    elements
        .binary_search_by(|e| e.tuple.as_slice().cmp(tuple))
        .map_err(|_| Error::NotCentral(tuple.to_vec()))
}

/// Complement of a central tuple: the unique solution of
/// `[z⃗, 1⃗] ∈ θ_{0⃗,e⃗}` and `[z⃗, 0⃗] ∈ θ_{1⃗,e⃗}`.
pub fn complement(za: &CentralAlgebra, tuple: &[usize]) -> Result<Vec<usize>> {
    let i = za
        .index_of(tuple)
        .ok_or_else(|| Error::NotCentral(tuple.to_vec()))?;
    Ok(za.elements[za.complement_of(i)].tuple.clone())
}

/// Infimum of two central tuples in `Z(A)`.
pub fn meet_c(za: &CentralAlgebra, e: &[usize], f: &[usize]) -> Result<Vec<usize>> {
    let i = za.index_of(e).ok_or_else(|| Error::NotCentral(e.to_vec()))?;
    let j = za.index_of(f).ok_or_else(|| Error::NotCentral(f.to_vec()))?;
    Ok(za.elements[za.meet_of(i, j)].tuple.clone())
}

/// Supremum of two central tuples in `Z(A)`.
pub fn join_c(za: &CentralAlgebra, e: &[usize], f: &[usize]) -> Result<Vec<usize>> {
    let i = za.index_of(e).ok_or_else(|| Error::NotCentral(e.to_vec()))?;
    let j = za.index_of(f).ok_or_else(|| Error::NotCentral(f.to_vec()))?;
    Ok(za.elements[za.join_of(i, j)].tuple.clone())
}

/// Membership characterization of the infimum: `a⃗ = e⃗ ∧ f⃗` iff
/// `[0⃗, a⃗] ∈ θ_{0⃗,e⃗}` and `[a⃗, f⃗] ∈ θ_{1⃗,e⃗}`.
pub fn meet_matches_membership(
    za: &CentralAlgebra,
    algebra: &FiniteAlgebra,
    e: usize,
    f: usize,
    candidate: usize,
) -> bool {
    let a = &za.elements[candidate].tuple;
    let ef = &za.elements[e];
    let fv = &za.elements[f].tuple;
    algebra
        .zero
        .iter()
        .zip(a)
        .all(|(&z, &ai)| ef.theta0.related(z, ai))
        && a.iter().zip(fv).all(|(&ai, &fi)| ef.theta1.related(ai, fi))
}

/// Membership characterization of the supremum: `a⃗ = e⃗ ∨ f⃗` iff
/// `[1⃗, a⃗] ∈ θ_{1⃗,e⃗}` and `[a⃗, f⃗] ∈ θ_{0⃗,e⃗}`.
pub fn join_matches_membership(
    za: &CentralAlgebra,
    algebra: &FiniteAlgebra,
    e: usize,
    f: usize,
    candidate: usize,
) -> bool {
    let a = &za.elements[candidate].tuple;
    let ef = &za.elements[e];
    let fv = &za.elements[f].tuple;
    algebra
        .one
        .iter()
        .zip(a)
        .all(|(&o, &ai)| ef.theta1.related(o, ai))
        && a.iter().zip(fv).all(|(&ai, &fi)| ef.theta0.related(ai, fi))
}

/// Determining-property report: every complementary central pair must fix a
/// unique factor pair through the four membership conditions.
#[derive(Debug, Clone)]
pub struct DpReport {
    pub holds: bool,
    /// `(e⃗, f⃗, count)` for the first pair determined by a non-unique count
    pub witness: Option<(Vec<usize>, Vec<usize>, usize)>,
}

pub fn check_dp(algebra: &FiniteAlgebra, caps: &Caps) -> Result<DpReport> {
    let za = central_elements(algebra, caps)?;
    let pairs = factor_pairs(algebra, caps)?;
    for i in 0..za.len() {
        let e = &za.elements[i].tuple;
        let f = &za.elements[za.complement_of(i)].tuple;
        let count = pairs
            .iter()
            .filter(|p| {
                let cond = |x: &[usize], to: &[usize], theta: &Congruence| {
                    x.iter().zip(to).all(|(&xi, &ti)| theta.related(xi, ti))
                };
                cond(e, &algebra.zero, &p.theta)
                    && cond(e, &algebra.one, &p.delta)
                    && cond(f, &algebra.zero, &p.delta)
                    && cond(f, &algebra.one, &p.theta)
            })
            .count();
        if count != 1 {
            return Ok(DpReport {
                holds: false,
                witness: Some((e.clone(), f.clone(), count)),
            });
        }
    }
    Ok(DpReport {
        holds: true,
        witness: None,
    })
}

/// Per-algebra evidence for the right-hand principal-congruence criterion:
/// `θ_{1⃗,e⃗} = θ(1⃗, e⃗)` for every central element.
pub fn check_rexdfc(algebra: &FiniteAlgebra, caps: &Caps) -> Result<bool> {
    let za = central_elements(algebra, caps)?;
    Ok(za
        .elements
        .iter()
        .all(|e| e.theta1 == cg_tuples(algebra, &algebra.one, &e.tuple)))
}

/// Left-hand version: `θ_{0⃗,e⃗} = θ(0⃗, e⃗)` for every central element.
pub fn check_lexdfc(algebra: &FiniteAlgebra, caps: &Caps) -> Result<bool> {
    let za = central_elements(algebra, caps)?;
    Ok(za
        .elements
        .iter()
        .all(|e| e.theta0 == cg_tuples(algebra, &algebra.zero, &e.tuple)))
}

/// What a homomorphism does to central elements.
#[derive(Debug, Clone)]
pub struct PreservationReport {
    pub preserves_centrals: bool,
    pub preserves_complementary: bool,
    pub boolean_hom: bool,
    /// central element whose image is not central
    pub central_witness: Option<Vec<usize>>,
    /// complementary pair whose images are not complementary
    pub complementary_witness: Option<(Vec<usize>, Vec<usize>)>,
    /// first Boolean operation the restriction fails to commute with
    pub boolean_witness: Option<String>,
}

/// Analyzes `f` against the central algebras of its domain and codomain.
pub fn analyze_homomorphism(f: &Homomorphism, caps: &Caps) -> Result<PreservationReport> {
    let dom_z = central_elements(&f.dom, caps)?;
    let cod_z = central_elements(&f.cod, caps)?;

    let mut report = PreservationReport {
        preserves_centrals: true,
        preserves_complementary: true,
        boolean_hom: true,
        central_witness: None,
        complementary_witness: None,
        boolean_witness: None,
    };

    let image: Vec<Option<usize>> = dom_z
        .elements
        .iter()
        .map(|e| cod_z.index_of(&f.apply_tuple(&e.tuple)))
        .collect();

    if let Some(i) = image.iter().position(Option::is_none) {
        report.preserves_centrals = false;
        report.central_witness = Some(dom_z.elements[i].tuple.clone());
    }
    if !report.preserves_centrals {
        report.preserves_complementary = false;
        report.boolean_hom = false;
        let e = report.central_witness.clone().unwrap_or_default();
        let i = dom_z.index_of(&e).unwrap_or(0);
        report.complementary_witness = Some((
            dom_z.elements[i].tuple.clone(),
            dom_z.elements[dom_z.complement_of(i)].tuple.clone(),
        ));
        report.boolean_witness = Some("image of a central element is not central".into());
        return Ok(report);
    }

    for i in 0..dom_z.len() {
        let ic = dom_z.complement_of(i);
        if cod_z.complement_of(image[i].unwrap()) != image[ic].unwrap() {
            report.preserves_complementary = false;
            report.complementary_witness = Some((
                dom_z.elements[i].tuple.clone(),
                dom_z.elements[ic].tuple.clone(),
            ));
            break;
        }
    }

    'boolean: {
        if image[dom_z.bottom] != Some(cod_z.bottom) {
            report.boolean_hom = false;
            report.boolean_witness = Some("0⃗ is not carried to 0⃗".into());
            break 'boolean;
        }
        if image[dom_z.top] != Some(cod_z.top) {
            report.boolean_hom = false;
            report.boolean_witness = Some("1⃗ is not carried to 1⃗".into());
            break 'boolean;
        }
        for i in 0..dom_z.len() {
            if cod_z.complement_of(image[i].unwrap()) != image[dom_z.complement_of(i)].unwrap() {
                report.boolean_hom = false;
                report.boolean_witness = Some(format!(
                    "complement of {} is not preserved",
                    f.dom.tuple_name(&dom_z.elements[i].tuple)
                ));
                break 'boolean;
            }
            for j in 0..dom_z.len() {
                if cod_z.meet_of(image[i].unwrap(), image[j].unwrap())
                    != image[dom_z.meet_of(i, j)].unwrap()
                {
                    report.boolean_hom = false;
                    report.boolean_witness = Some(format!(
                        "meet of {} and {} is not preserved",
                        f.dom.tuple_name(&dom_z.elements[i].tuple),
                        f.dom.tuple_name(&dom_z.elements[j].tuple)
                    ));
                    break 'boolean;
                }
                if cod_z.join_of(image[i].unwrap(), image[j].unwrap())
                    != image[dom_z.join_of(i, j)].unwrap()
                {
                    report.boolean_hom = false;
                    report.boolean_witness = Some(format!(
                        "join of {} and {} is not preserved",
                        f.dom.tuple_name(&dom_z.elements[i].tuple),
                        f.dom.tuple_name(&dom_z.elements[j].tuple)
                    ));
                    break 'boolean;
                }
            }
        }
    }

    Ok(report)
}

/// Exhaustively verifies the right coordinate-detecting condition: for all
/// `a, b ∈ A` and `c, d ∈ B`,
/// `A×B ⊨ φ((a,c), (b,d), [0⃗,1⃗])  iff  c = d`.
pub fn check_formula_r(
    phi: &PCFormula,
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    caps: &Caps,
) -> Result<bool> {
    check_formula(phi, a, b, caps, false)
}

/// Left version: the formula must detect equality of the first coordinates.
pub fn check_formula_l(
    phi: &PCFormula,
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    caps: &Caps,
) -> Result<bool> {
    check_formula(phi, a, b, caps, true)
}

fn check_formula(
    phi: &PCFormula,
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    caps: &Caps,
    left: bool,
) -> Result<bool> {
    let m = a.const_len();
    if phi.z_arity != m || b.const_len() != m {
        return Err(Error::ZArityMismatch {
            expected: phi.z_arity,
            found: m,
        });
    }
    let prod = product(&[a, b])?;
    if prod.algebra.size > caps.product {
        return Err(Error::ProductCap {
            size: prod.algebra.size,
            cap: caps.product,
        });
    }
    let slot: Vec<usize> = (0..m)
        .map(|j| prod.encode(&[a.zero[j], b.one[j]]))
        .collect();
    let (na, nb) = (a.size, b.size);
    let total = na * na * nb * nb;
    let ok = exec::all_of(total, |index| {
        let d = index % nb;
        let c = (index / nb) % nb;
        let bb = (index / (nb * nb)) % na;
        let aa = index / (nb * nb * na);
        let x = prod.encode(&[aa, c]);
        let y = prod.encode(&[bb, d]);
        let expected = if left { aa == bb } else { c == d };
        phi.holds(&prod.algebra, x, y, &slot)
            .map(|v| v == expected)
            .unwrap_or(false)
    });
    Ok(ok)
}
