//! Congruence generation and lattice operations: closure of generating
//! pairs, join/meet/composition, system solving, full enumeration of the
//! congruence lattice, and Maltsev-chain witness extraction.
//!
//! The closure algorithm is the standard one for finite algebras: union-find
//! over the carrier, propagating every newly merged pair through every unary
//! polynomial (each operation with all arguments but one frozen) until the
//! partition is stable. Each union is recorded in a proof forest so that a
//! membership `(a, b) ∈ θ(c⃗, d⃗)` can later be expanded into a term chain.

use crate::algebra::{eval_term, FiniteAlgebra, Term};
use crate::caps::Caps;
use crate::error::{Error, Result};
use std::collections::{BTreeSet, VecDeque};

/// A congruence in canonical form: `rep[x]` is the least element of the
/// block of `x`. Equality of congruences is equality of these arrays.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    rep: Vec<usize>,
}

impl Congruence {
    pub fn identity(n: usize) -> Congruence {
        Congruence {
            rep: (0..n).collect(),
        }
    }

    pub fn universal(n: usize) -> Congruence {
        Congruence { rep: vec![0; n] }
    }

    /// Builds a congruence from a class-labelling function. Canonicalizes to
    /// least-element representatives; compatibility is the caller's burden.
    pub fn from_classes(n: usize, class: impl Fn(usize) -> usize) -> Congruence {
        let mut first = std::collections::HashMap::new();
        let mut rep = vec![0; n];
        for (x, slot) in rep.iter_mut().enumerate() {
            *slot = *first.entry(class(x)).or_insert(x);
        }
        Congruence { rep }
    }

    /// Validates a raw representative array as a congruence of `algebra`.
    pub fn validated(algebra: &FiniteAlgebra, rep: Vec<usize>) -> Result<Congruence> {
        if rep.len() != algebra.size {
            return Err(Error::BaseMismatch {
                left: algebra.size,
                right: rep.len(),
            });
        }
        for (x, &r) in rep.iter().enumerate() {
            if r > x || rep[r] != r {
                return Err(Error::BadRepresentatives);
            }
        }
        let theta = Congruence { rep };
        theta.check_compatible(algebra)?;
        Ok(theta)
    }

    fn check_compatible(&self, algebra: &FiniteAlgebra) -> Result<()> {
        // Sufficient to compare each tuple against its representative tuple.
        for (op, sym) in algebra.signature.symbols.iter().enumerate() {
            for args in algebra.tuples(sym.arity) {
                let reps: Vec<usize> = args.iter().map(|&a| self.rep[a]).collect();
                if self.rep[algebra.apply(op, &args)] != self.rep[algebra.apply(op, &reps)] {
                    return Err(Error::NotACongruence {
                        symbol: sym.name.clone(),
                        args,
                        others: reps,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.rep.len()
    }

    pub fn rep(&self) -> &[usize] {
        &self.rep
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.rep[x] == self.rep[y]
    }

    /// All blocks, ordered by least element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut index: Vec<Option<usize>> = vec![None; self.rep.len()];
        for (x, &r) in self.rep.iter().enumerate() {
            match index[r] {
                Some(b) => blocks[b].push(x),
                None => {
                    index[r] = Some(blocks.len());
                    blocks.push(vec![x]);
                }
            }
        }
        blocks
    }

    pub fn count_blocks(&self) -> usize {
        self.rep.iter().enumerate().filter(|&(x, &r)| x == r).count()
    }

    pub fn is_identity(&self) -> bool {
        self.rep.iter().enumerate().all(|(x, &r)| x == r)
    }

    pub fn is_universal(&self) -> bool {
        self.rep.iter().all(|&r| r == 0)
    }

    /// Refinement order: does every block of `self` sit inside a block of
    /// `other`?
    pub fn leq(&self, other: &Congruence) -> bool {
        self.rep
            .iter()
            .enumerate()
            .all(|(x, &r)| other.rep[x] == other.rep[r])
    }

    /// Blockwise intersection; a congruence whenever both inputs are.
    pub fn meet(&self, other: &Congruence) -> Result<Congruence> {
        if self.size() != other.size() {
            return Err(Error::BaseMismatch {
                left: self.size(),
                right: other.size(),
            });
        }
        let mut first = std::collections::HashMap::new();
        let mut rep = vec![0; self.size()];
        for (x, slot) in rep.iter_mut().enumerate() {
            *slot = *first.entry((self.rep[x], other.rep[x])).or_insert(x);
        }
        Ok(Congruence { rep })
    }

    /// The relational composition `self ∘ other`.
    pub fn compose(&self, other: &Congruence) -> Result<Relation> {
        if self.size() != other.size() {
            return Err(Error::BaseMismatch {
                left: self.size(),
                right: other.size(),
            });
        }
        let n = self.size();
        let mut rel = Relation::empty(n);
        for x in 0..n {
            for y in 0..n {
                if self.related(x, y) {
                    for z in 0..n {
                        if other.related(y, z) {
                            rel.insert(x, z);
                        }
                    }
                }
            }
        }
        Ok(rel)
    }

    /// `self` and `other` permute iff their composition is symmetric.
    pub fn permutes(&self, other: &Congruence) -> Result<bool> {
        Ok(self.compose(other)?.is_symmetric())
    }
}

/// A plain binary relation on `{0..n-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    n: usize,
    bits: Vec<bool>,
}

impl Relation {
    pub fn empty(n: usize) -> Relation {
        Relation {
            n,
            bits: vec![false; n * n],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, x: usize, y: usize) {
        self.bits[x * self.n + y] = true;
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.bits[x * self.n + y]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| self.contains(x, y) == self.contains(y, x)))
    }

    pub fn is_universal(&self) -> bool {
        self.bits.iter().all(|&b| b)
    }

    pub fn equals_congruence(&self, theta: &Congruence) -> bool {
        self.n == theta.size()
            && (0..self.n)
                .all(|x| (0..self.n).all(|y| self.contains(x, y) == theta.related(x, y)))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n)
            .flat_map(move |x| (0..self.n).map(move |y| (x, y)))
            .filter(|&(x, y)| self.contains(x, y))
    }
}

// ---------------------------------------------------------------------------
// Congruence generation with a proof forest.

#[derive(Debug, Clone)]
enum Reason {
    /// The k-th generating pair.
    Generator(usize),
    /// A unary polynomial (operation `op` with slot `pos` free, the other
    /// arguments frozen to `context`) applied to the endpoints of an earlier
    /// edge.
    Translation {
        op: usize,
        pos: usize,
        context: Vec<usize>,
        premise: usize,
    },
}

#[derive(Debug, Clone)]
struct Edge {
    u: usize,
    v: usize,
    reason: Reason,
}

/// Proof forest of a closure run: one edge per successful union.
#[derive(Debug, Clone)]
pub struct ClosureTrace {
    edges: Vec<Edge>,
    adjacency: Vec<Vec<usize>>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        self.parent[rx.max(ry)] = rx.min(ry);
        true
    }
}

/// Least congruence of `algebra` containing the given pairs.
pub fn cg(algebra: &FiniteAlgebra, pairs: &[(usize, usize)]) -> Congruence {
    cg_trace(algebra, pairs).0
}

/// Principal congruence generated by the componentwise pairs of two tuples.
pub fn cg_tuples(algebra: &FiniteAlgebra, left: &[usize], right: &[usize]) -> Congruence {
    cg(algebra, &tuple_pairs(left, right))
}

pub fn tuple_pairs(left: &[usize], right: &[usize]) -> Vec<(usize, usize)> {
    left.iter().zip(right).map(|(&a, &b)| (a, b)).collect()
}

/// Closure with the proof forest retained for witness extraction.
pub fn cg_trace(algebra: &FiniteAlgebra, pairs: &[(usize, usize)]) -> (Congruence, ClosureTrace) {
    let n = algebra.size;
    let mut uf = UnionFind::new(n);
    let mut trace = ClosureTrace {
        edges: Vec::new(),
        adjacency: vec![Vec::new(); n],
    };
    let mut worklist: VecDeque<usize> = VecDeque::new();

    let record = |u: usize,
                      v: usize,
                      reason: Reason,
                      trace: &mut ClosureTrace,
                      worklist: &mut VecDeque<usize>| {
        let id = trace.edges.len();
        trace.adjacency[u].push(id);
        trace.adjacency[v].push(id);
        trace.edges.push(Edge { u, v, reason });
        worklist.push_back(id);
    };

    for (k, &(x, y)) in pairs.iter().enumerate() {
        debug_assert!(x < n && y < n);
        if uf.union(x, y) {
            record(x, y, Reason::Generator(k), &mut trace, &mut worklist);
        }
    }

    // Unary polynomials: (op, free position, frozen context).
    let translations: Vec<(usize, usize, Vec<usize>)> = algebra
        .signature
        .symbols
        .iter()
        .enumerate()
        .filter(|(_, sym)| sym.arity >= 1)
        .flat_map(|(op, sym)| {
            (0..sym.arity).flat_map(move |pos| {
                context_tuples(n, sym.arity - 1).map(move |context| (op, pos, context))
            })
        })
        .collect();

    let mut args_buf: Vec<usize> = Vec::new();
    while let Some(edge_id) = worklist.pop_front() {
        let (x, y) = (trace.edges[edge_id].u, trace.edges[edge_id].v);
        for (op, pos, context) in &translations {
            args_buf.clear();
            args_buf.extend_from_slice(&context[..*pos]);
            args_buf.push(x);
            args_buf.extend_from_slice(&context[*pos..]);
            let u = algebra.apply(*op, &args_buf);
            args_buf[*pos] = y;
            let v = algebra.apply(*op, &args_buf);
            if uf.union(u, v) {
                record(
                    u,
                    v,
                    Reason::Translation {
                        op: *op,
                        pos: *pos,
                        context: context.clone(),
                        premise: edge_id,
                    },
                    &mut trace,
                    &mut worklist,
                );
            }
        }
    }

    let mut rep = vec![usize::MAX; n];
    for x in 0..n {
        let root = uf.find(x);
        if rep[root] == usize::MAX {
            rep[root] = x; // least element seen first
        }
        rep[x] = rep[root];
    }
    (Congruence { rep }, trace)
}

fn context_tuples(size: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..size.pow(len as u32)).map(move |mut index| {
        let mut tuple = vec![0; len];
        for slot in (0..len).rev() {
            tuple[slot] = index % size;
            index /= size;
        }
        tuple
    })
}

/// Join in the congruence lattice: closure of the union of the blocks.
pub fn join(algebra: &FiniteAlgebra, x: &Congruence, y: &Congruence) -> Result<Congruence> {
    if x.size() != y.size() || x.size() != algebra.size {
        return Err(Error::BaseMismatch {
            left: x.size(),
            right: y.size(),
        });
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for e in 0..algebra.size {
        pairs.push((e, x.rep[e]));
        pairs.push((e, y.rep[e]));
    }
    Ok(cg(algebra, &pairs))
}

// ---------------------------------------------------------------------------
// Systems over Con(A).

/// A system `(θ_1..θ_k, x_1..x_k)`: the entries must satisfy
/// `(x_i, x_j) ∈ θ_i ∨ θ_j` for all `i, j`.
#[derive(Debug, Clone)]
pub struct CongruenceSystem {
    pub entries: Vec<(Congruence, usize)>,
}

/// Solves a system: some `x` with `(x, x_i) ∈ θ_i` for every entry, if one
/// exists. The system invariant is validated first; a violation is an error.
/// When the meet of all `θ_i` is the identity the solution is unique.
pub fn solve_system(
    algebra: &FiniteAlgebra,
    system: &CongruenceSystem,
) -> Result<Option<usize>> {
    for (i, (theta, x)) in system.entries.iter().enumerate() {
        if theta.size() != algebra.size {
            return Err(Error::BaseMismatch {
                left: algebra.size,
                right: theta.size(),
            });
        }
        if *x >= algebra.size {
            return Err(Error::OutOfRange {
                value: *x,
                size: algebra.size,
            });
        }
        for (j, (delta, y)) in system.entries.iter().enumerate().skip(i + 1) {
            let joined = join(algebra, theta, delta)?;
            if !joined.related(*x, *y) {
                return Err(Error::InvalidSystem { i, j });
            }
        }
    }
    Ok(solutions(algebra.size, &system.entries).into_iter().next())
}

/// All elements satisfying every entry; validation is the caller's burden.
pub(crate) fn solutions(size: usize, entries: &[(Congruence, usize)]) -> Vec<usize> {
    (0..size)
        .filter(|&candidate| entries.iter().all(|(theta, x)| theta.related(candidate, *x)))
        .collect()
}

// ---------------------------------------------------------------------------
// Full congruence lattice.

/// Exactly `Con(A)`: every congruence of a finite algebra is a join of
/// principal ones, so the principal congruences are closed under join.
/// Returned in ascending canonical order.
pub fn all_congruences(algebra: &FiniteAlgebra, caps: &Caps) -> Result<Vec<Congruence>> {
    if algebra.size > caps.con_enum {
        return Err(Error::ConEnumCap {
            size: algebra.size,
            cap: caps.con_enum,
        });
    }
    let mut principals: BTreeSet<Congruence> = BTreeSet::new();
    for a in 0..algebra.size {
        for b in (a + 1)..algebra.size {
            principals.insert(cg(algebra, &[(a, b)]));
        }
    }
    let mut known: BTreeSet<Congruence> = principals.clone();
    known.insert(Congruence::identity(algebra.size));
    let mut frontier: Vec<Congruence> = known.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut fresh: Vec<Congruence> = Vec::new();
        for theta in &frontier {
            for principal in &principals {
                let joined = join(algebra, theta, principal)?;
                if !known.contains(&joined) {
                    known.insert(joined.clone());
                    fresh.push(joined);
                    if known.len() > caps.con_count {
                        return Err(Error::ConCountCap {
                            cap: caps.con_count,
                        });
                    }
                }
            }
        }
        frontier = fresh;
    }
    Ok(known.into_iter().collect())
}

// ---------------------------------------------------------------------------
// Maltsev chains.

/// A term-chain certificate for `(a, b) ∈ θ(c⃗, d⃗)`: terms `t_1..t_k` with
/// `k` odd over `|c⃗| + |λ⃗|` variables (generator slots first, then
/// parameter slots) such that
///
/// - `a = t_1(c⃗, λ⃗)` and `b = t_k(d⃗, λ⃗)`,
/// - `t_i(c⃗, λ⃗) = t_{i+1}(c⃗, λ⃗)` for even `i < k` (1-based),
/// - `t_i(d⃗, λ⃗) = t_{i+1}(d⃗, λ⃗)` for odd `i < k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaltsevChain {
    pub terms: Vec<Term>,
    pub params: Vec<usize>,
    pub endpoints: (usize, usize),
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl MaltsevChain {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn gen_arity(&self) -> usize {
        self.left.len()
    }

    /// Checks every defining equation by term evaluation.
    pub fn validate(&self, algebra: &FiniteAlgebra) -> Result<()> {
        let k = self.terms.len();
        if k.is_multiple_of(2) {
            return Err(Error::ChainTooLong { limit: k });
        }
        let mut on_left = self.left.clone();
        on_left.extend_from_slice(&self.params);
        let mut on_right = self.right.clone();
        on_right.extend_from_slice(&self.params);

        let fail = Err(Error::NotInCongruence {
            pair: self.endpoints,
        });
        if eval_term(algebra, &self.terms[0], &on_left)? != self.endpoints.0 {
            return fail;
        }
        if eval_term(algebra, &self.terms[k - 1], &on_right)? != self.endpoints.1 {
            return fail;
        }
        for idx in 0..k - 1 {
            // 1-based index i = idx + 1; even i uses the c⃗ side.
            let side = if (idx + 1) % 2 == 0 { &on_left } else { &on_right };
            let here = eval_term(algebra, &self.terms[idx], side)?;
            let next = eval_term(algebra, &self.terms[idx + 1], side)?;
            if here != next {
                return fail;
            }
        }
        Ok(())
    }
}

/// One link of the walk before parity normalization: a term over the
/// generator slots plus locally numbered parameters, walked from the c⃗-side
/// value to the d⃗-side value when `forward`.
struct RawStep {
    term: Term,
    params: Vec<usize>,
    forward: bool,
}

/// Extracts a Maltsev chain witnessing `(a, b) ∈ θ(c⃗, d⃗)`.
pub fn maltsev_witness(
    algebra: &FiniteAlgebra,
    a: usize,
    b: usize,
    left: &[usize],
    right: &[usize],
    caps: &Caps,
) -> Result<MaltsevChain> {
    if left.len() != right.len() {
        return Err(Error::ConstantLengthMismatch {
            zero: left.len(),
            one: right.len(),
        });
    }
    let pairs = tuple_pairs(left, right);
    let (theta, trace) = cg_trace(algebra, &pairs);
    if !theta.related(a, b) {
        return Err(Error::NotInCongruence { pair: (a, b) });
    }
    let gen_arity = left.len();

    let mut raw: Vec<RawStep> = Vec::new();
    for (edge_id, flipped) in forest_path(&trace, a, b) {
        raw.push(expand_edge(&trace, edge_id, flipped, gen_arity, caps)?);
    }

    // Normalize to the alternating pattern: step i (1-based) must walk
    // c⃗-side to d⃗-side when i is odd and back when i is even. Constant
    // stutter steps (a parameter variable pointing at the junction element)
    // repair any mismatch, and one more at the end forces odd length.
    let mut steps: Vec<RawStep> = Vec::new();
    let mut cursor = a;
    for step in raw {
        let want_forward = steps.len().is_multiple_of(2);
        if step.forward != want_forward {
            steps.push(stutter(gen_arity, cursor));
        }
        cursor = advance(algebra, &step, left, right)?;
        steps.push(step);
    }
    if steps.len().is_multiple_of(2) {
        steps.push(stutter(gen_arity, b));
    }
    if steps.len() > caps.chain_len {
        return Err(Error::ChainTooLong {
            limit: caps.chain_len,
        });
    }

    // Consolidate the per-step parameters into one global λ⃗, merging slots
    // that hold the same element.
    let mut params: Vec<usize> = Vec::new();
    let mut terms: Vec<Term> = Vec::with_capacity(steps.len());
    for step in &steps {
        let slots: Vec<usize> = step
            .params
            .iter()
            .map(|&value| match params.iter().position(|&p| p == value) {
                Some(slot) => slot,
                None => {
                    params.push(value);
                    params.len() - 1
                }
            })
            .collect();
        terms.push(step.term.map_vars(&|i| {
            if i < gen_arity {
                Term::Var(i)
            } else {
                Term::Var(gen_arity + slots[i - gen_arity])
            }
        }));
    }

    let chain = MaltsevChain {
        terms,
        params,
        endpoints: (a, b),
        left: left.to_vec(),
        right: right.to_vec(),
    };
    debug_assert!(chain.validate(algebra).is_ok());
    Ok(chain)
}

fn stutter(gen_arity: usize, value: usize) -> RawStep {
    RawStep {
        term: Term::Var(gen_arity),
        params: vec![value],
        forward: true, // evaluates identically on both sides
    }
}

/// Value of the step's term on the far side of the walk.
fn advance(
    algebra: &FiniteAlgebra,
    step: &RawStep,
    left: &[usize],
    right: &[usize],
) -> Result<usize> {
    let side = if step.forward { right } else { left };
    let mut assignment = side.to_vec();
    assignment.extend_from_slice(&step.params);
    eval_term(algebra, &step.term, &assignment)
}

/// Path between two related elements in the proof forest, as edge ids with a
/// flag marking edges traversed against their stored orientation.
fn forest_path(trace: &ClosureTrace, a: usize, b: usize) -> Vec<(usize, bool)> {
    if a == b {
        return Vec::new();
    }
    let n = trace.adjacency.len();
    let mut from: Vec<Option<(usize, usize)>> = vec![None; n]; // (prev element, edge)
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([a]);
    seen[a] = true;
    while let Some(x) = queue.pop_front() {
        if x == b {
            break;
        }
        for &edge_id in &trace.adjacency[x] {
            let e = &trace.edges[edge_id];
            let y = if e.u == x { e.v } else { e.u };
            if !seen[y] {
                seen[y] = true;
                from[y] = Some((x, edge_id));
                queue.push_back(y);
            }
        }
    }
    let mut path = Vec::new();
    let mut here = b;
    while here != a {
        let (prev, edge_id) = from[here].expect("endpoints are in one forest component");
        let e = &trace.edges[edge_id];
        path.push((edge_id, e.u != prev));
        here = prev;
    }
    path.reverse();
    path
}

/// Expands a forest edge into one walk step. `flipped` walks the edge from
/// `v` to `u`. A generator edge is a bare projection onto its generator
/// slot; a translation edge wraps the expansion of its premise edge in one
/// more operation layer, turning the frozen context into fresh parameters.
fn expand_edge(
    trace: &ClosureTrace,
    edge_id: usize,
    flipped: bool,
    gen_arity: usize,
    caps: &Caps,
) -> Result<RawStep> {
    match &trace.edges[edge_id].reason {
        Reason::Generator(k) => Ok(RawStep {
            term: Term::Var(*k),
            params: Vec::new(),
            forward: !flipped,
        }),
        Reason::Translation {
            op,
            pos,
            context,
            premise,
        } => {
            let mut step = expand_edge(trace, *premise, flipped, gen_arity, caps)?;
            let offset = gen_arity + step.params.len();
            let mut inner = Some(std::mem::replace(&mut step.term, Term::Var(0)));
            let mut args: Vec<Term> = Vec::with_capacity(context.len() + 1);
            let mut ctx_slot = 0;
            for slot in 0..=context.len() {
                if slot == *pos {
                    args.push(inner.take().expect("one free slot"));
                } else {
                    args.push(Term::Var(offset + ctx_slot));
                    ctx_slot += 1;
                }
            }
            step.term = Term::App(*op, args);
            step.params.extend_from_slice(context);
            if step.term.depth() > caps.term_depth {
                return Err(Error::TermTooDeep {
                    limit: caps.term_depth,
                });
            }
            Ok(step)
        }
    }
}
