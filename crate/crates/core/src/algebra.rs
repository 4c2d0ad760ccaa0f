//! Finite algebras of a finite similarity type: representation, validation,
//! and the basic constructions (products, quotients, generated subalgebras,
//! homomorphisms, term evaluation).
//!
//! Carriers are always `{0..size-1}`. Operation tables are stored flat in
//! row-major order: the value of `f(a_0, .., a_{k-1})` sits at index
//! `((a_0 * size + a_1) * size + a_2) ...`. Each algebra designates two
//! constant tuples `zero` and `one` of a common length `m >= 1`; they are
//! data on the algebra, not required nullary symbols, but nullary symbols
//! named `0`, `1` (or `0_i`, `1_i` for coordinate `i`) are cross-checked
//! against the designation.

use crate::congruence::{cg, Congruence};
use crate::error::{Error, Result};
use itertools::Itertools;
use std::collections::BTreeSet;

/// An operation symbol together with its arity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OpSymbol {
    pub name: String,
    pub arity: usize,
}

/// A finite similarity type: a sequence of named operation symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Signature {
    pub symbols: Vec<OpSymbol>,
}

impl Signature {
    pub fn new(symbols: impl IntoIterator<Item = (impl Into<String>, usize)>) -> Result<Self> {
        let symbols: Vec<OpSymbol> = symbols
            .into_iter()
            .map(|(name, arity)| OpSymbol {
                name: name.into(),
                arity,
            })
            .collect();
        let mut seen = BTreeSet::new();
        for sym in &symbols {
            if !seen.insert(sym.name.clone()) {
                return Err(Error::DuplicateSymbol(sym.name.clone()));
            }
        }
        Ok(Signature { symbols })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s.name == name)
    }
}

/// A term over a signature: variables, designated-constant references, and
/// symbol applications. Variables are indices into an assignment tuple;
/// `Zero(j)`/`One(j)` evaluate to coordinate `j` of the designated tuples of
/// whichever algebra the term is evaluated in.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(usize),
    Zero(usize),
    One(usize),
    App(usize, Vec<Term>),
}

impl Term {
    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) | Term::Zero(_) | Term::One(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    pub fn max_var(&self) -> Option<usize> {
        match self {
            Term::Var(i) => Some(*i),
            Term::Zero(_) | Term::One(_) => None,
            Term::App(_, args) => args.iter().filter_map(Term::max_var).max(),
        }
    }

    /// Rewrites every variable through `f`, leaving constants untouched.
    pub fn map_vars(&self, f: &impl Fn(usize) -> Term) -> Term {
        match self {
            Term::Var(i) => f(*i),
            Term::Zero(j) => Term::Zero(*j),
            Term::One(j) => Term::One(*j),
            Term::App(op, args) => {
                Term::App(*op, args.iter().map(|t| t.map_vars(f)).collect())
            }
        }
    }
}

/// A finite algebra: carrier `{0..size-1}`, one flat table per symbol, and
/// the designated constant tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAlgebra {
    pub name: String,
    pub size: usize,
    pub signature: Signature,
    pub tables: Vec<Vec<usize>>,
    pub zero: Vec<usize>,
    pub one: Vec<usize>,
    pub display: Option<Vec<String>>,
}

impl FiniteAlgebra {
    /// Builds and validates an algebra. This is the canonical constructor:
    /// every invariant (total in-range tables, constant designation,
    /// designation cross-checks for nullary symbols) is verified here.
    pub fn new(
        name: impl Into<String>,
        size: usize,
        signature: Signature,
        tables: Vec<Vec<usize>>,
        zero: Vec<usize>,
        one: Vec<usize>,
        display: Option<Vec<String>>,
    ) -> Result<Self> {
        let alg = FiniteAlgebra {
            name: name.into(),
            size,
            signature,
            tables,
            zero,
            one,
            display,
        };
        alg.validate()?;
        Ok(alg)
    }

    fn validate(&self) -> Result<()> {
        if self.size == 0 {
            return Err(Error::OutOfRange { value: 0, size: 0 });
        }
        let mut seen = BTreeSet::new();
        for sym in &self.signature.symbols {
            if !seen.insert(&sym.name) {
                return Err(Error::DuplicateSymbol(sym.name.clone()));
            }
        }
        if self.tables.len() != self.signature.len() {
            let missing = self
                .signature
                .symbols
                .get(self.tables.len())
                .map(|s| s.name.clone())
                .unwrap_or_default();
            return Err(Error::MissingTable(missing));
        }
        for (sym, table) in self.signature.symbols.iter().zip(&self.tables) {
            let expected = self.size.pow(sym.arity as u32);
            if table.len() != expected {
                return Err(Error::TableLength {
                    symbol: sym.name.clone(),
                    expected,
                    found: table.len(),
                });
            }
            for (index, &value) in table.iter().enumerate() {
                if value >= self.size {
                    return Err(Error::EntryOutOfRange {
                        symbol: sym.name.clone(),
                        index,
                        value,
                        size: self.size,
                    });
                }
            }
        }
        if self.zero.is_empty() || self.one.is_empty() {
            return Err(Error::MissingConstants);
        }
        if self.zero.len() != self.one.len() {
            return Err(Error::ConstantLengthMismatch {
                zero: self.zero.len(),
                one: self.one.len(),
            });
        }
        for (which, tuple) in [("zero", &self.zero), ("one", &self.one)] {
            for (coord, &value) in tuple.iter().enumerate() {
                if value >= self.size {
                    return Err(Error::ConstantOutOfRange {
                        which,
                        coord,
                        value,
                        size: self.size,
                    });
                }
            }
        }
        // Nullary symbols named after the designated tuples must agree with
        // the designation: `0`/`1` for m = 1, `0_i`/`1_i` (1-based) otherwise.
        for (op, sym) in self.signature.symbols.iter().enumerate() {
            if sym.arity != 0 {
                continue;
            }
            let value = self.tables[op][0];
            let expected = designated_coordinate(&sym.name, &self.zero, &self.one);
            if let Some(expected) = expected {
                if value != expected {
                    return Err(Error::DesignationMismatch {
                        symbol: sym.name.clone(),
                        expected,
                        found: value,
                    });
                }
            }
        }
        if let Some(display) = &self.display {
            if display.len() != self.size {
                return Err(Error::DisplayLength {
                    expected: self.size,
                    found: display.len(),
                });
            }
        }
        Ok(())
    }

    /// Length `m` of the designated tuples.
    pub fn const_len(&self) -> usize {
        self.zero.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.size == 1
    }

    /// Row-major index of an argument tuple.
    pub fn table_index(&self, args: &[usize]) -> usize {
        let mut index = 0;
        for &a in args {
            debug_assert!(a < self.size);
            index = index * self.size + a;
        }
        index
    }

    /// Applies operation `op` to `args`.
    pub fn apply(&self, op: usize, args: &[usize]) -> usize {
        debug_assert_eq!(args.len(), self.signature.symbols[op].arity);
        self.tables[op][self.table_index(args)]
    }

    pub fn element_name(&self, x: usize) -> String {
        match &self.display {
            Some(names) => names[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn tuple_name(&self, tuple: &[usize]) -> String {
        if tuple.len() == 1 {
            self.element_name(tuple[0])
        } else {
            format!("({})", tuple.iter().map(|&x| self.element_name(x)).join(","))
        }
    }

    /// Iterates all argument tuples of the given arity.
    pub fn tuples(&self, arity: usize) -> impl Iterator<Item = Vec<usize>> + '_ {
        let size = self.size;
        (0..size.pow(arity as u32)).map(move |mut index| {
            let mut args = vec![0; arity];
            for slot in (0..arity).rev() {
                args[slot] = index % size;
                index /= size;
            }
            args
        })
    }
}

fn designated_coordinate(name: &str, zero: &[usize], one: &[usize]) -> Option<usize> {
    let (tuple, rest) = match name.strip_prefix('0') {
        Some(rest) => (zero, rest),
        None => (one, name.strip_prefix('1')?),
    };
    if rest.is_empty() {
        return if tuple.len() == 1 { Some(tuple[0]) } else { None };
    }
    let coord: usize = rest.strip_prefix('_')?.parse().ok()?;
    (1..=tuple.len()).contains(&coord).then(|| tuple[coord - 1])
}

/// Evaluates a term under an assignment of its variables.
pub fn eval_term(algebra: &FiniteAlgebra, term: &Term, assignment: &[usize]) -> Result<usize> {
    match term {
        Term::Var(i) => assignment.get(*i).copied().ok_or(Error::UnboundVariable {
            index: *i,
            have: assignment.len(),
        }),
        Term::Zero(j) => algebra.zero.get(*j).copied().ok_or(Error::BadConstantIndex {
            index: *j,
            len: algebra.zero.len(),
        }),
        Term::One(j) => algebra.one.get(*j).copied().ok_or(Error::BadConstantIndex {
            index: *j,
            len: algebra.one.len(),
        }),
        Term::App(op, args) => {
            let sym = algebra
                .signature
                .symbols
                .get(*op)
                .ok_or(Error::UnknownSymbol { index: *op })?;
            if sym.arity != args.len() {
                return Err(Error::ArityMismatch {
                    symbol: sym.name.clone(),
                    expected: sym.arity,
                    found: args.len(),
                });
            }
            let values = args
                .iter()
                .map(|t| eval_term(algebra, t, assignment))
                .collect::<Result<Vec<_>>>()?;
            Ok(algebra.apply(*op, &values))
        }
    }
}

/// A total operation-preserving map between two algebras of the same
/// signature. `map[x]` is the image of `x`; the designated tuples are
/// preserved componentwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    pub dom: FiniteAlgebra,
    pub cod: FiniteAlgebra,
    pub map: Vec<usize>,
}

impl Homomorphism {
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn apply_tuple(&self, tuple: &[usize]) -> Vec<usize> {
        tuple.iter().map(|&x| self.map[x]).collect()
    }

    pub fn identity(algebra: &FiniteAlgebra) -> Homomorphism {
        Homomorphism {
            dom: algebra.clone(),
            cod: algebra.clone(),
            map: (0..algebra.size).collect(),
        }
    }

    /// `other` after `self` (i.e. `other ∘ self`), validated.
    pub fn then(&self, other: &Homomorphism) -> Result<Homomorphism> {
        if self.cod.size != other.dom.size || self.cod.signature != other.dom.signature {
            return Err(Error::SignatureMismatch);
        }
        let map = self.map.iter().map(|&x| other.map[x]).collect();
        validate_homomorphism(&self.dom, &other.cod, map)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.size];
        self.map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.cod.size];
        for &y in &self.map {
            seen[y] = true;
        }
        seen.iter().all(|&b| b)
    }

    pub fn is_bijective(&self) -> bool {
        self.dom.size == self.cod.size && self.is_injective()
    }

    /// The kernel congruence `{(a, b) | f(a) = f(b)}`.
    pub fn kernel(&self) -> Congruence {
        Congruence::from_classes(self.dom.size, |x| self.map[x])
    }
}

/// Validates a raw map as a homomorphism, reporting a concrete violating
/// tuple on failure.
pub fn validate_homomorphism(
    dom: &FiniteAlgebra,
    cod: &FiniteAlgebra,
    map: Vec<usize>,
) -> Result<Homomorphism> {
    if dom.signature != cod.signature {
        return Err(Error::SignatureMismatch);
    }
    if map.len() != dom.size {
        return Err(Error::MapNotTotal {
            expected: dom.size,
            found: map.len(),
        });
    }
    for (index, &value) in map.iter().enumerate() {
        if value >= cod.size {
            return Err(Error::MapOutOfRange {
                index,
                value,
                size: cod.size,
            });
        }
    }
    for (op, sym) in dom.signature.symbols.iter().enumerate() {
        for args in dom.tuples(sym.arity) {
            let image_of_value = map[dom.apply(op, &args)];
            let mapped_args: Vec<usize> = args.iter().map(|&a| map[a]).collect();
            if image_of_value != cod.apply(op, &mapped_args) {
                return Err(Error::NotHomomorphism {
                    symbol: sym.name.clone(),
                    args,
                });
            }
        }
    }
    for coord in 0..dom.const_len().min(cod.const_len()) {
        if map[dom.zero[coord]] != cod.zero[coord] {
            return Err(Error::ConstantsNotPreserved { which: "zero", coord });
        }
        if map[dom.one[coord]] != cod.one[coord] {
            return Err(Error::ConstantsNotPreserved { which: "one", coord });
        }
    }
    if dom.const_len() != cod.const_len() {
        return Err(Error::ConstantLengthMismatch {
            zero: dom.const_len(),
            one: cod.const_len(),
        });
    }
    Ok(Homomorphism {
        dom: dom.clone(),
        cod: cod.clone(),
        map,
    })
}

/// A direct product with its row-major pairing and the projection
/// homomorphisms. The pairing is part of the external contract: coordinate 0
/// is the most significant digit.
#[derive(Debug, Clone)]
pub struct ProductAlgebra {
    pub algebra: FiniteAlgebra,
    pub factor_sizes: Vec<usize>,
    pub projections: Vec<Homomorphism>,
}

impl ProductAlgebra {
    pub fn encode(&self, coords: &[usize]) -> usize {
        debug_assert_eq!(coords.len(), self.factor_sizes.len());
        coords
            .iter()
            .zip(&self.factor_sizes)
            .fold(0, |acc, (&c, &n)| acc * n + c)
    }

    pub fn decode(&self, mut x: usize) -> Vec<usize> {
        let mut coords = vec![0; self.factor_sizes.len()];
        for (slot, &n) in self.factor_sizes.iter().enumerate().rev() {
            coords[slot] = x % n;
            x /= n;
        }
        coords
    }
}

/// Direct product of a non-empty sequence of algebras over one signature.
pub fn product(factors: &[&FiniteAlgebra]) -> Result<ProductAlgebra> {
    let first = *factors.first().ok_or(Error::EmptyProduct)?;
    for f in factors {
        if f.signature != first.signature {
            return Err(Error::SignatureMismatch);
        }
        if f.const_len() != first.const_len() {
            return Err(Error::ConstantLengthMismatch {
                zero: f.const_len(),
                one: first.const_len(),
            });
        }
    }
    let factor_sizes: Vec<usize> = factors.iter().map(|f| f.size).collect();
    let size: usize = factor_sizes.iter().product();
    let decode = |mut x: usize| -> Vec<usize> {
        let mut coords = vec![0; factor_sizes.len()];
        for (slot, &n) in factor_sizes.iter().enumerate().rev() {
            coords[slot] = x % n;
            x /= n;
        }
        coords
    };
    let encode = |coords: &[usize]| -> usize {
        coords
            .iter()
            .zip(&factor_sizes)
            .fold(0, |acc, (&c, &n)| acc * n + c)
    };

    let mut tables = Vec::with_capacity(first.signature.len());
    for (op, sym) in first.signature.symbols.iter().enumerate() {
        let mut table = Vec::with_capacity(size.pow(sym.arity as u32));
        let mut args = vec![0; sym.arity];
        loop {
            let decoded: Vec<Vec<usize>> = args.iter().map(|&a| decode(a)).collect();
            let coords: Vec<usize> = factors
                .iter()
                .enumerate()
                .map(|(i, f)| {
                    let factor_args: Vec<usize> = decoded.iter().map(|d| d[i]).collect();
                    f.apply(op, &factor_args)
                })
                .collect();
            table.push(encode(&coords));
            // Odometer over product-carrier argument tuples.
            let mut slot = sym.arity;
            loop {
                if slot == 0 {
                    break;
                }
                slot -= 1;
                args[slot] += 1;
                if args[slot] < size {
                    break;
                }
                args[slot] = 0;
            }
            if args.iter().all(|&a| a == 0) {
                break;
            }
        }
        tables.push(table);
    }

    let m = first.const_len();
    let zero: Vec<usize> = (0..m)
        .map(|j| encode(&factors.iter().map(|f| f.zero[j]).collect::<Vec<_>>()))
        .collect();
    let one: Vec<usize> = (0..m)
        .map(|j| encode(&factors.iter().map(|f| f.one[j]).collect::<Vec<_>>()))
        .collect();
    let display: Vec<String> = (0..size)
        .map(|x| {
            let coords = decode(x);
            format!(
                "({})",
                coords
                    .iter()
                    .zip(factors)
                    .map(|(&c, f)| f.element_name(c))
                    .join(",")
            )
        })
        .collect();
    let name = factors.iter().map(|f| f.name.as_str()).join("x");
    let algebra = FiniteAlgebra::new(
        name,
        size,
        first.signature.clone(),
        tables,
        zero,
        one,
        Some(display),
    )?;

    let projections = factors
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let map: Vec<usize> = (0..size).map(|x| decode(x)[i]).collect();
            validate_homomorphism(&algebra, f, map)
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(ProductAlgebra {
        algebra,
        factor_sizes,
        projections,
    })
}

/// A quotient algebra with its canonical block list (ordered by least
/// element) and the canonical surjection.
#[derive(Debug, Clone)]
pub struct QuotientAlgebra {
    pub algebra: FiniteAlgebra,
    pub blocks: Vec<Vec<usize>>,
    pub canonical: Homomorphism,
}

/// Quotient of `base` by a congruence. The congruence type guarantees
/// compatibility, so the induced tables are well defined.
pub fn quotient(base: &FiniteAlgebra, theta: &Congruence) -> Result<QuotientAlgebra> {
    if theta.size() != base.size {
        return Err(Error::BaseMismatch {
            left: base.size,
            right: theta.size(),
        });
    }
    let blocks = theta.blocks();
    let size = blocks.len();
    let mut block_of = vec![0; base.size];
    for (b, block) in blocks.iter().enumerate() {
        for &x in block {
            block_of[x] = b;
        }
    }
    let mut tables = Vec::with_capacity(base.signature.len());
    for (op, sym) in base.signature.symbols.iter().enumerate() {
        let mut table = vec![0; size.pow(sym.arity as u32)];
        let mut args = vec![0; sym.arity];
        for (index, entry) in table.iter_mut().enumerate() {
            let mut rem = index;
            for slot in (0..sym.arity).rev() {
                args[slot] = rem % size;
                rem /= size;
            }
            let reps: Vec<usize> = args.iter().map(|&b| blocks[b][0]).collect();
            *entry = block_of[base.apply(op, &reps)];
        }
        tables.push(table);
    }
    let zero: Vec<usize> = base.zero.iter().map(|&x| block_of[x]).collect();
    let one: Vec<usize> = base.one.iter().map(|&x| block_of[x]).collect();
    let display: Vec<String> = blocks
        .iter()
        .map(|block| {
            format!(
                "{{{}}}",
                block.iter().map(|&x| base.element_name(x)).join(",")
            )
        })
        .collect();
    let algebra = FiniteAlgebra::new(
        format!("{}/θ", base.name),
        size,
        base.signature.clone(),
        tables,
        zero,
        one,
        Some(display),
    )?;
    let canonical = validate_homomorphism(base, &algebra, block_of)?;
    Ok(QuotientAlgebra {
        algebra,
        blocks,
        canonical,
    })
}

/// Least subalgebra containing `seed`, the designated constants and all
/// nullary symbol values; returns it with the inclusion homomorphism.
pub fn subalgebra_generated(
    base: &FiniteAlgebra,
    seed: &[usize],
) -> Result<(FiniteAlgebra, Homomorphism)> {
    for &x in seed {
        if x >= base.size {
            return Err(Error::OutOfRange {
                value: x,
                size: base.size,
            });
        }
    }
    let mut member = vec![false; base.size];
    let mut universe: Vec<usize> = Vec::new();
    let push = |x: usize, member: &mut Vec<bool>, universe: &mut Vec<usize>| {
        if !member[x] {
            member[x] = true;
            universe.push(x);
        }
    };
    for &x in seed {
        push(x, &mut member, &mut universe);
    }
    for &x in base.zero.iter().chain(&base.one) {
        push(x, &mut member, &mut universe);
    }
    for (op, sym) in base.signature.symbols.iter().enumerate() {
        if sym.arity == 0 {
            push(base.tables[op][0], &mut member, &mut universe);
        }
    }
    // Closure: apply every operation to tuples of current members until stable.
    let mut frontier = 0;
    while frontier < universe.len() {
        frontier = universe.len();
        for (op, sym) in base.signature.symbols.iter().enumerate() {
            if sym.arity == 0 {
                continue;
            }
            let members: Vec<usize> = universe.clone();
            let mut counters = vec![0; sym.arity];
            loop {
                let args: Vec<usize> = counters.iter().map(|&i| members[i]).collect();
                push(base.apply(op, &args), &mut member, &mut universe);
                let mut slot = sym.arity;
                loop {
                    if slot == 0 {
                        break;
                    }
                    slot -= 1;
                    counters[slot] += 1;
                    if counters[slot] < members.len() {
                        break;
                    }
                    counters[slot] = 0;
                }
                if counters.iter().all(|&c| c == 0) {
                    break;
                }
            }
        }
        if universe.len() == frontier {
            break;
        }
        frontier = 0;
    }

    let mut elements: Vec<usize> = universe;
    elements.sort_unstable();
    let mut index_of = vec![usize::MAX; base.size];
    for (i, &x) in elements.iter().enumerate() {
        index_of[x] = i;
    }
    let size = elements.len();
    let mut tables = Vec::with_capacity(base.signature.len());
    for (op, sym) in base.signature.symbols.iter().enumerate() {
        let mut table = vec![0; size.pow(sym.arity as u32)];
        let mut args = vec![0; sym.arity];
        for (index, entry) in table.iter_mut().enumerate() {
            let mut rem = index;
            for slot in (0..sym.arity).rev() {
                args[slot] = rem % size;
                rem /= size;
            }
            let base_args: Vec<usize> = args.iter().map(|&i| elements[i]).collect();
            *entry = index_of[base.apply(op, &base_args)];
        }
        tables.push(table);
    }
    let zero: Vec<usize> = base.zero.iter().map(|&x| index_of[x]).collect();
    let one: Vec<usize> = base.one.iter().map(|&x| index_of[x]).collect();
    let display: Vec<String> = elements.iter().map(|&x| base.element_name(x)).collect();
    let sub = FiniteAlgebra::new(
        format!("Sg({})", base.name),
        size,
        base.signature.clone(),
        tables,
        zero,
        one,
        Some(display),
    )?;
    let embedding = validate_homomorphism(&sub, base, elements)?;
    Ok((sub, embedding))
}

/// Per-algebra shadow of the `0⃗ ≈ 1⃗ → x ≈ y` axiom: true iff collapsing
/// the designated tuples generates the universal congruence.
pub fn check_zero_one(algebra: &FiniteAlgebra) -> bool {
    let pairs: Vec<(usize, usize)> = algebra
        .zero
        .iter()
        .zip(&algebra.one)
        .map(|(&z, &o)| (z, o))
        .collect();
    cg(algebra, &pairs).is_universal()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn validates_two_chain() {
        let two = fixtures::chain_lattice(2).unwrap();
        assert_eq!(two.size, 2);
        assert_eq!(two.zero, vec![0]);
        assert_eq!(two.one, vec![1]);
    }

    #[test]
    fn rejects_out_of_range_entry() {
        let sig = Signature::new([("f", 1)]).unwrap();
        let err = FiniteAlgebra::new("bad", 4, sig, vec![vec![0, 1, 2, 7]], vec![0], vec![3], None)
            .unwrap_err();
        assert!(matches!(err, Error::EntryOutOfRange { value: 7, .. }));
    }

    #[test]
    fn m3_is_a_valid_bounded_lattice() {
        let d = fixtures::m3_lattice().unwrap();
        assert_eq!(d.size, 5);
        // a, b, c pairwise incomparable: meets hit bottom, joins hit top.
        let meet = d.signature.index_of("meet").unwrap();
        let join = d.signature.index_of("join").unwrap();
        for (x, y) in [(1, 2), (1, 3), (2, 3)] {
            assert_eq!(d.apply(meet, &[x, y]), 0);
            assert_eq!(d.apply(join, &[x, y]), 4);
        }
    }

    #[test]
    fn rejects_designation_mismatch() {
        let sig = Signature::new([("0", 0), ("1", 0)]).unwrap();
        let err = FiniteAlgebra::new(
            "bad",
            2,
            sig,
            vec![vec![1], vec![1]],
            vec![0],
            vec![1],
            None,
        )
        .unwrap_err();
        assert!(matches!(err, Error::DesignationMismatch { .. }));
    }

    #[test]
    fn product_of_two_chains_is_the_diamond() {
        let two = fixtures::chain_lattice(2).unwrap();
        let p = product(&[&two, &two]).unwrap();
        assert_eq!(p.algebra.size, 4);
        assert_eq!(p.algebra.zero, vec![0]);
        assert_eq!(p.algebra.one, vec![3]);
        let join = p.algebra.signature.index_of("join").unwrap();
        // (0,1) ∨ (1,0) = (1,1)
        assert_eq!(p.algebra.apply(join, &[1, 2]), 3);
        assert!(p.projections.iter().all(|h| h.is_surjective()));
    }

    #[test]
    fn product_is_coordinatewise() {
        let two = fixtures::chain_meet_semilattice(2).unwrap();
        let three = fixtures::chain_meet_semilattice(3).unwrap();
        let p = product(&[&two, &three]).unwrap();
        for (op, sym) in p.algebra.signature.symbols.iter().enumerate() {
            for args in p.algebra.tuples(sym.arity) {
                let coords: Vec<Vec<usize>> = args.iter().map(|&a| p.decode(a)).collect();
                let expected = p.encode(&[
                    two.apply(op, &coords.iter().map(|c| c[0]).collect::<Vec<_>>()),
                    three.apply(op, &coords.iter().map(|c| c[1]).collect::<Vec<_>>()),
                ]);
                assert_eq!(p.algebra.apply(op, &args), expected);
            }
        }
    }

    #[test]
    fn unary_product_is_the_factor() {
        let two = fixtures::chain_lattice(2).unwrap();
        let p = product(&[&two]).unwrap();
        assert_eq!(p.algebra.size, two.size);
        assert_eq!(p.algebra.tables, two.tables);
        assert!(p.projections[0].is_bijective());
    }

    #[test]
    fn quotient_by_identity_and_universal() {
        let d = fixtures::two_by_two_lattice().unwrap();
        let by_delta = quotient(&d, &Congruence::identity(4)).unwrap();
        assert_eq!(by_delta.algebra.size, 4);
        assert!(by_delta.canonical.is_bijective());
        let by_nabla = quotient(&d, &Congruence::universal(4)).unwrap();
        assert_eq!(by_nabla.algebra.size, 1);
    }

    #[test]
    fn diamond_quotient_by_bottom_atom_is_the_two_chain() {
        let d = fixtures::two_by_two_lattice().unwrap();
        let theta = cg(&d, &[(0, 1)]);
        assert_eq!(theta.rep(), &[0, 0, 2, 2]);
        let q = quotient(&d, &theta).unwrap();
        assert_eq!(q.algebra.size, 2);
        assert_eq!(q.algebra.zero, vec![0]);
        assert_eq!(q.algebra.one, vec![1]);
        assert_eq!(q.canonical.kernel(), theta);
    }

    #[test]
    fn subalgebra_of_constants_only() {
        let c3 = fixtures::chain_lattice(3).unwrap();
        let (sub, emb) = subalgebra_generated(&c3, &[]).unwrap();
        assert_eq!(sub.size, 2);
        assert_eq!(emb.map, vec![0, 2]);
    }

    #[test]
    fn atoms_of_m3_generate_a_diamond() {
        let d = fixtures::m3_lattice().unwrap();
        let (sub, emb) = subalgebra_generated(&d, &[1, 2]).unwrap();
        assert_eq!(sub.size, 4);
        assert_eq!(emb.map, vec![0, 1, 2, 4]);
        assert!(emb.is_injective());
    }

    #[test]
    fn full_seed_recovers_the_algebra() {
        let d = fixtures::m3_lattice().unwrap();
        let seed: Vec<usize> = (0..d.size).collect();
        let (sub, _) = subalgebra_generated(&d, &seed).unwrap();
        assert_eq!(sub.size, d.size);
        assert_eq!(sub.tables, d.tables);
    }

    #[test]
    fn term_evaluation() {
        let two = fixtures::chain_lattice(2).unwrap();
        let meet = two.signature.index_of("meet").unwrap();
        assert_eq!(eval_term(&two, &Term::Var(0), &[1, 0]).unwrap(), 1);
        let t = Term::App(meet, vec![Term::Var(0), Term::Var(1)]);
        assert_eq!(eval_term(&two, &t, &[1, 0]).unwrap(), 0);

        let d = fixtures::two_by_two_lattice().unwrap();
        let join = d.signature.index_of("join").unwrap();
        let meet = d.signature.index_of("meet").unwrap();
        // (x0 ∨ x1) ∧ x2 at (a, b, a) = a on the diamond
        let t = Term::App(
            meet,
            vec![
                Term::App(join, vec![Term::Var(0), Term::Var(1)]),
                Term::Var(2),
            ],
        );
        assert_eq!(eval_term(&d, &t, &[1, 2, 1]).unwrap(), 1);
    }

    #[test]
    fn unbound_variable_is_an_error() {
        let two = fixtures::chain_lattice(2).unwrap();
        let err = eval_term(&two, &Term::Var(3), &[0]).unwrap_err();
        assert!(matches!(err, Error::UnboundVariable { index: 3, .. }));
    }

    #[test]
    fn identity_and_composition_validate() {
        let d = fixtures::two_by_two_lattice().unwrap();
        let id = Homomorphism::identity(&d);
        assert!(validate_homomorphism(&d, &d, id.map.clone()).is_ok());
        let composed = id.then(&id).unwrap();
        assert_eq!(composed.map, id.map);
    }

    #[test]
    fn constant_violation_is_reported() {
        let two = fixtures::chain_lattice(2).unwrap();
        // swapping bottom and top breaks the nullary tables
        let err = validate_homomorphism(&two, &two, vec![1, 0]).unwrap_err();
        assert!(matches!(err, Error::NotHomomorphism { .. }));
    }

    #[test]
    fn zero_one_collapse() {
        assert!(check_zero_one(&fixtures::chain_lattice(2).unwrap()));
        assert!(check_zero_one(&fixtures::two_by_two_lattice().unwrap()));
        // degenerate designation: 0⃗ = 1⃗ on a 2-element carrier with no operations
        let sig = Signature::new(Vec::<(String, usize)>::new()).unwrap();
        let degenerate =
            FiniteAlgebra::new("deg", 2, sig, vec![], vec![0], vec![0], None).unwrap();
        assert!(!check_zero_one(&degenerate));
    }
}
