//! Finite free algebras of the variety generated by a finite algebra, and
//! synthesis of the existential right coordinate-detecting formula from the
//! congruence `θ([1⃗,1⃗], [0⃗,1⃗])` on `F(x,y) × F(y)`.
//!
//! The free algebra on `k` generators is realized inside the direct power
//! `gen^(gen^k)`: the generators are the coordinate projection vectors, the
//! designated constants are the broadcast vectors, and every element records
//! one minimal-depth representative term (ties broken by symbol order and
//! then argument order).

use crate::algebra::{
    eval_term, product, validate_homomorphism, FiniteAlgebra, Homomorphism, Term,
};
use crate::caps::Caps;
use crate::central::{check_formula_r, check_rexdfc};
use crate::congruence::{maltsev_witness, MaltsevChain};
use crate::error::{Error, Result};
use crate::formula::PCFormula;
use std::collections::HashMap;

/// A finite free algebra with its realization vectors and term table.
#[derive(Debug, Clone)]
pub struct FreeAlgebra {
    pub algebra: FiniteAlgebra,
    /// indices of the projection generators
    pub generators: Vec<usize>,
    /// one representative term over the generators per element
    pub term_table: Vec<Term>,
    /// realization of each element in `gen^(gen^k)`
    pub vectors: Vec<Vec<usize>>,
}

impl FreeAlgebra {
    /// The homomorphism induced by a generator assignment into any algebra
    /// of the variety: each element is sent to the value of its
    /// representative term. Validation fails exactly when the target is not
    /// closed under the generating algebra's identities.
    pub fn induced_hom(
        &self,
        target: &FiniteAlgebra,
        assignment: &[usize],
    ) -> Result<Homomorphism> {
        if assignment.len() != self.generators.len() {
            return Err(Error::MapNotTotal {
                expected: self.generators.len(),
                found: assignment.len(),
            });
        }
        let map = self
            .term_table
            .iter()
            .map(|t| eval_term(target, t, assignment))
            .collect::<Result<Vec<_>>>()?;
        validate_homomorphism(&self.algebra, target, map)
    }
}

/// Builds the free algebra on `k` generators of the variety generated by
/// `gen`, as the subalgebra of `gen^(gen^k)` generated by the projections
/// and the designated constants.
pub fn free_algebra(gen: &FiniteAlgebra, k: usize, caps: &Caps) -> Result<FreeAlgebra> {
    // The full power `gen^(gen^k)` is never materialized; its elements are.
    // Each one is a vector of length `|gen|^k`, so that length is what the
    // power cap bounds, and the free-size cap stops runaway generation.
    let coords = (gen.size as u64)
        .checked_pow(k as u32)
        .ok_or(Error::PowerCap {
            size: u64::MAX,
            cap: caps.power,
        })?;
    if coords > caps.power {
        return Err(Error::PowerCap {
            size: coords,
            cap: caps.power,
        });
    }
    let coords = coords as usize;

    // Assignment behind coordinate `c`: digit `i` (row-major over the k
    // generator slots) is the value the i-th generator takes there.
    let assignment_digit = |c: usize, i: usize| -> usize {
        let mut rem = c;
        for _ in 0..(k - 1 - i) {
            rem /= gen.size;
        }
        rem % gen.size
    };

    let mut vectors: Vec<Vec<usize>> = Vec::new();
    let mut terms: Vec<Term> = Vec::new();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let add = |vector: Vec<usize>,
                   term: Term,
                   vectors: &mut Vec<Vec<usize>>,
                   terms: &mut Vec<Term>,
                   index: &mut HashMap<Vec<usize>, usize>|
     -> Option<usize> {
        if index.contains_key(&vector) {
            return None;
        }
        let id = vectors.len();
        index.insert(vector.clone(), id);
        vectors.push(vector);
        terms.push(term);
        Some(id)
    };

    let mut generators = Vec::with_capacity(k);
    for i in 0..k {
        let vector: Vec<usize> = (0..coords).map(|c| assignment_digit(c, i)).collect();
        let id = match index.get(&vector) {
            // projections coincide only over a one-element generator
            Some(&id) => id,
            None => add(vector, Term::Var(i), &mut vectors, &mut terms, &mut index)
                .expect("fresh vector"),
        };
        generators.push(id);
    }
    for (j, &value) in gen.zero.iter().enumerate() {
        add(
            vec![value; coords],
            Term::Zero(j),
            &mut vectors,
            &mut terms,
            &mut index,
        );
    }
    for (j, &value) in gen.one.iter().enumerate() {
        add(
            vec![value; coords],
            Term::One(j),
            &mut vectors,
            &mut terms,
            &mut index,
        );
    }
    for (op, sym) in gen.signature.symbols.iter().enumerate() {
        if sym.arity == 0 {
            add(
                vec![gen.tables[op][0]; coords],
                Term::App(op, Vec::new()),
                &mut vectors,
                &mut terms,
                &mut index,
            );
        }
    }

    // Breadth-first closure under the operations, one layer per pass so the
    // recorded terms have minimal depth.
    loop {
        let frozen = vectors.len();
        let mut discovered = false;
        for (op, sym) in gen.signature.symbols.iter().enumerate() {
            if sym.arity == 0 {
                continue;
            }
            let mut counters = vec![0usize; sym.arity];
            loop {
                let vector: Vec<usize> = (0..coords)
                    .map(|c| {
                        let args: Vec<usize> =
                            counters.iter().map(|&a| vectors[a][c]).collect();
                        gen.apply(op, &args)
                    })
                    .collect();
                let term = Term::App(
                    op,
                    counters.iter().map(|&a| terms[a].clone()).collect(),
                );
                if add(vector, term, &mut vectors, &mut terms, &mut index).is_some() {
                    discovered = true;
                    if vectors.len() > caps.free_size {
                        return Err(Error::FreeSizeCap {
                            cap: caps.free_size,
                        });
                    }
                }
                let mut slot = sym.arity;
                loop {
                    if slot == 0 {
                        break;
                    }
                    slot -= 1;
                    counters[slot] += 1;
                    if counters[slot] < frozen {
                        break;
                    }
                    counters[slot] = 0;
                }
                if counters.iter().all(|&c| c == 0) {
                    break;
                }
            }
        }
        if !discovered {
            break;
        }
    }

    let size = vectors.len();
    let mut tables = Vec::with_capacity(gen.signature.len());
    for (op, sym) in gen.signature.symbols.iter().enumerate() {
        let mut table = vec![0; size.pow(sym.arity as u32)];
        let mut args = vec![0; sym.arity];
        for (entry, slot_value) in table.iter_mut().enumerate() {
            let mut rem = entry;
            for slot in (0..sym.arity).rev() {
                args[slot] = rem % size;
                rem /= size;
            }
            let vector: Vec<usize> = (0..coords)
                .map(|c| {
                    let coords_args: Vec<usize> = args.iter().map(|&a| vectors[a][c]).collect();
                    gen.apply(op, &coords_args)
                })
                .collect();
            *slot_value = index[&vector];
        }
        tables.push(table);
    }
    let zero: Vec<usize> = gen.zero.iter().map(|&v| index[&vec![v; coords]]).collect();
    let one: Vec<usize> = gen.one.iter().map(|&v| index[&vec![v; coords]]).collect();
    let display: Vec<String> = terms.iter().map(|t| describe(t, gen)).collect();
    let algebra = FiniteAlgebra::new(
        format!("F_{}({})", gen.name, k),
        size,
        gen.signature.clone(),
        tables,
        zero,
        one,
        Some(display),
    )?;

    Ok(FreeAlgebra {
        algebra,
        generators,
        term_table: terms,
        vectors,
    })
}

fn describe(term: &Term, gen: &FiniteAlgebra) -> String {
    match term {
        Term::Var(i) => format!("x{i}"),
        Term::Zero(j) => format!("0_{}", j + 1),
        Term::One(j) => format!("1_{}", j + 1),
        Term::App(op, args) => {
            let name = &gen.signature.symbols[*op].name;
            if args.is_empty() {
                name.clone()
            } else {
                format!(
                    "{name}({})",
                    args.iter()
                        .map(|a| describe(a, gen))
                        .collect::<Vec<_>>()
                        .join(",")
                )
            }
        }
    }
}

/// Everything produced by the formula synthesis.
#[derive(Debug, Clone)]
pub struct Synthesis {
    pub formula: PCFormula,
    pub chain: MaltsevChain,
    pub free_two: FreeAlgebra,
    pub free_one: FreeAlgebra,
    /// carrier size of `F(x,y) × F(y)`
    pub product_size: usize,
}

/// Synthesizes the existential right coordinate-detecting formula from the
/// free algebras of the variety generated by `gen`: builds
/// `P = F(x,y) × F(y)`, extracts a term chain for
/// `((x,y), (y,y)) ∈ θ^P([1⃗,1⃗], [0⃗,1⃗])`, and freezes the u⃗-slots of the
/// resulting principal-congruence formula to `1⃗`.
pub fn synthesize_right_formula(gen: &FiniteAlgebra, caps: &Caps) -> Result<Synthesis> {
    if !check_rexdfc(gen, caps)? {
        return Err(Error::RexdfcPremise {
            algebra: gen.name.clone(),
        });
    }
    if gen.size * gen.size <= caps.con_enum {
        let square = product(&[gen, gen])?;
        if !check_rexdfc(&square.algebra, caps)? {
            return Err(Error::RexdfcPremise {
                algebra: square.algebra.name,
            });
        }
    }

    let free_two = free_algebra(gen, 2, caps)?;
    let free_one = free_algebra(gen, 1, caps)?;
    let prod = product(&[&free_two.algebra, &free_one.algebra])?;
    if prod.algebra.size > caps.product {
        return Err(Error::ProductCap {
            size: prod.algebra.size,
            cap: caps.product,
        });
    }

    let m = gen.const_len();
    let ones: Vec<usize> = (0..m)
        .map(|j| prod.encode(&[free_two.algebra.one[j], free_one.algebra.one[j]]))
        .collect();
    let zero_one: Vec<usize> = (0..m)
        .map(|j| prod.encode(&[free_two.algebra.zero[j], free_one.algebra.one[j]]))
        .collect();
    let xy = prod.encode(&[free_two.generators[0], free_one.generators[0]]);
    let yy = prod.encode(&[free_two.generators[1], free_one.generators[0]]);

    let chain = match maltsev_witness(&prod.algebra, xy, yy, &ones, &zero_one, caps) {
        Ok(chain) => chain,
        Err(Error::NotInCongruence { .. }) => {
            // ((x,y),(y,y)) sits in the kernel of the second projection but
            // not in the generated congruence: the premise fails at the
            // free-algebra level.
            return Err(Error::RexdfcPremise {
                algebra: prod.algebra.name,
            });
        }
        Err(e) => return Err(e),
    };
    let formula = PCFormula::from_chain(&chain);

    if !check_formula_r(&formula, gen, gen, caps)? {
        return Err(Error::SynthesisVerification);
    }

    Ok(Synthesis {
        formula,
        chain,
        free_two,
        free_one,
        product_size: prod.algebra.size,
    })
}

/// Evaluates a formula exhaustively; the free-standing name matching the
/// external interface.
pub fn eval_pcformula(
    phi: &PCFormula,
    algebra: &FiniteAlgebra,
    x: usize,
    y: usize,
    z: &[usize],
) -> Result<bool> {
    phi.holds(algebra, x, y, z)
}
