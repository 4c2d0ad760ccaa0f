//! Existential conjunction-of-equations formulas with distinguished
//! argument roles, and their exhaustive evaluation on finite algebras.
//!
//! A `PCFormula` is a formula `φ(x, y, z⃗) = ∃w⃗ ⋀ p = q` whose equations
//! are term pairs over the variable layout `x, y, z_0..z_{m-1},
//! w_0..w_{p-1}`. Principal-congruence formulas in the strict chain shape
//! (endpoint equations plus the even/odd chain equations, with the u⃗-slots
//! frozen to the designated 1⃗) are one source of such formulas, built by
//! [`PCFormula::from_chain`]; hand-written candidates such as
//! `x ∧ z ≈ y ∧ z` are another.

use crate::algebra::{eval_term, FiniteAlgebra, Signature, Term};
use crate::congruence::MaltsevChain;
use crate::error::{Error, Result};
use itertools::Itertools;

/// One equation between two terms.
pub type Equation = (Term, Term);

/// `φ(x, y, z⃗) = ∃w⃗ ⋀ p = q` over the variable layout
/// `[x, y, z_0.., w_0..]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PCFormula {
    pub z_arity: usize,
    pub witnesses: usize,
    pub equations: Vec<Equation>,
}

impl PCFormula {
    pub fn var_x() -> Term {
        Term::Var(0)
    }

    pub fn var_y() -> Term {
        Term::Var(1)
    }

    pub fn var_z(&self, j: usize) -> Term {
        debug_assert!(j < self.z_arity);
        Term::Var(2 + j)
    }

    pub fn var_w(&self, j: usize) -> Term {
        debug_assert!(j < self.witnesses);
        Term::Var(2 + self.z_arity + j)
    }

    /// Compiles a Maltsev chain into the principal-congruence formula
    /// `π(x, y, 1⃗, z⃗)`: the u⃗-slots become designated-one constants, the
    /// v⃗-slots become the z⃗ arguments, and the chain parameters become
    /// existential witnesses.
    pub fn from_chain(chain: &MaltsevChain) -> PCFormula {
        let m = chain.gen_arity();
        let p = chain.params.len();
        let on_u = |term: &Term| {
            term.map_vars(&|i| {
                if i < m {
                    Term::One(i)
                } else {
                    Term::Var(2 + m + (i - m))
                }
            })
        };
        let on_v = |term: &Term| {
            term.map_vars(&|i| {
                if i < m {
                    Term::Var(2 + i)
                } else {
                    Term::Var(2 + m + (i - m))
                }
            })
        };
        let k = chain.terms.len();
        let mut equations = Vec::with_capacity(k + 1);
        equations.push((Term::Var(0), on_u(&chain.terms[0])));
        for idx in 0..k - 1 {
            // 1-based index i = idx + 1: even i stays on the u⃗ side.
            if (idx + 1) % 2 == 0 {
                equations.push((on_u(&chain.terms[idx]), on_u(&chain.terms[idx + 1])));
            } else {
                equations.push((on_v(&chain.terms[idx]), on_v(&chain.terms[idx + 1])));
            }
        }
        equations.push((on_v(&chain.terms[k - 1]), Term::Var(1)));
        PCFormula {
            z_arity: m,
            witnesses: p,
            equations,
        }
    }

    /// Exhaustive evaluation: true iff some witness tuple satisfies every
    /// equation. The search backtracks over the witness slots, checking an
    /// equation as soon as every witness it mentions has a value, so a
    /// failing prefix prunes the remaining slots.
    pub fn holds(&self, algebra: &FiniteAlgebra, x: usize, y: usize, z: &[usize]) -> Result<bool> {
        if z.len() != self.z_arity {
            return Err(Error::ZArityMismatch {
                expected: self.z_arity,
                found: z.len(),
            });
        }
        for &value in [x, y].iter().chain(z) {
            if value >= algebra.size {
                return Err(Error::OutOfRange {
                    value,
                    size: algebra.size,
                });
            }
        }
        let base = 2 + self.z_arity;
        // stage[s] holds the equations ready once the first s witnesses are
        // assigned
        let mut stage: Vec<Vec<usize>> = vec![Vec::new(); self.witnesses + 1];
        for (idx, (lhs, rhs)) in self.equations.iter().enumerate() {
            let highest = lhs
                .max_var()
                .into_iter()
                .chain(rhs.max_var())
                .max()
                .unwrap_or(0);
            let slot = highest.saturating_sub(base - 1).min(self.witnesses);
            stage[slot].push(idx);
        }
        let mut assignment = Vec::with_capacity(base + self.witnesses);
        assignment.push(x);
        assignment.push(y);
        assignment.extend_from_slice(z);
        assignment.resize(base + self.witnesses, 0);
        self.search(algebra, &stage, &mut assignment, 0)
    }

    fn search(
        &self,
        algebra: &FiniteAlgebra,
        stage: &[Vec<usize>],
        assignment: &mut Vec<usize>,
        slot: usize,
    ) -> Result<bool> {
        for &eq in &stage[slot] {
            let (lhs, rhs) = &self.equations[eq];
            if eval_term(algebra, lhs, assignment)? != eval_term(algebra, rhs, assignment)? {
                return Ok(false);
            }
        }
        if slot == self.witnesses {
            return Ok(true);
        }
        let base = 2 + self.z_arity;
        for value in 0..algebra.size {
            assignment[base + slot] = value;
            if self.search(algebra, stage, assignment, slot + 1)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// S-expression rendering with named variable roles.
    pub fn to_sexpr(&self, signature: &Signature) -> String {
        let body = self
            .equations
            .iter()
            .map(|(lhs, rhs)| {
                format!(
                    "(= {} {})",
                    term_sexpr(lhs, signature, self.z_arity),
                    term_sexpr(rhs, signature, self.z_arity)
                )
            })
            .join(" ");
        format!(
            "(formula (z-arity {}) (witnesses {}) (and {}))",
            self.z_arity, self.witnesses, body
        )
    }

    /// Parses the output of [`PCFormula::to_sexpr`].
    pub fn parse_sexpr(input: &str, signature: &Signature) -> Result<PCFormula> {
        let tokens = tokenize(input)?;
        let (expr, rest) = parse_expr(&tokens)?;
        if !rest.is_empty() {
            return Err(Error::Parse("trailing tokens after formula".into()));
        }
        let list = expr.as_list("formula")?;
        if list.len() != 4 {
            return Err(Error::Parse(
                "expected (formula (z-arity m) (witnesses p) (and ...))".into(),
            ));
        }
        let header = |expr: &Sexpr, head: &str| -> Result<usize> {
            let items = expr.as_list(head)?;
            items
                .get(1)
                .ok_or_else(|| Error::Parse(format!("`{head}` needs a value")))?
                .as_atom()?
                .parse()
                .map_err(|_| Error::Parse(format!("bad `{head}` value")))
        };
        let z_arity = header(&list[1], "z-arity")?;
        let witnesses = header(&list[2], "witnesses")?;
        let body = list[3].as_list("and")?;
        let mut equations = Vec::new();
        for eq in &body[1..] {
            let parts = eq.as_list("=")?;
            if parts.len() != 3 {
                return Err(Error::Parse("an equation needs two sides".into()));
            }
            let lhs = parse_term(&parts[1], signature, z_arity, witnesses)?;
            let rhs = parse_term(&parts[2], signature, z_arity, witnesses)?;
            equations.push((lhs, rhs));
        }
        Ok(PCFormula {
            z_arity,
            witnesses,
            equations,
        })
    }
}

fn term_sexpr(term: &Term, signature: &Signature, z_arity: usize) -> String {
    match term {
        Term::Var(0) => "x".into(),
        Term::Var(1) => "y".into(),
        Term::Var(i) if i - 2 < z_arity => format!("(z {})", i - 2),
        Term::Var(i) => format!("(w {})", i - 2 - z_arity),
        Term::Zero(j) => format!("(zero {j})"),
        Term::One(j) => format!("(one {j})"),
        Term::App(op, args) => {
            let name = &signature.symbols[*op].name;
            if args.is_empty() {
                format!("({name})")
            } else {
                format!(
                    "({} {})",
                    name,
                    args.iter()
                        .map(|t| term_sexpr(t, signature, z_arity))
                        .join(" ")
                )
            }
        }
    }
}

/// Renders a chain term, whose layout is generator slots then parameters.
pub fn chain_term_sexpr(term: &Term, signature: &Signature, gen_arity: usize) -> String {
    match term {
        Term::Var(i) if *i < gen_arity => format!("(gen {i})"),
        Term::Var(i) => format!("(lam {})", i - gen_arity),
        Term::Zero(j) => format!("(zero {j})"),
        Term::One(j) => format!("(one {j})"),
        Term::App(op, args) => {
            let name = &signature.symbols[*op].name;
            if args.is_empty() {
                format!("({name})")
            } else {
                format!(
                    "({} {})",
                    name,
                    args.iter()
                        .map(|t| chain_term_sexpr(t, signature, gen_arity))
                        .join(" ")
                )
            }
        }
    }
}

// --- minimal s-expression machinery ---------------------------------------

enum Sexpr {
    Atom(String),
    List(Vec<Sexpr>),
}

impl Sexpr {
    fn as_atom(&self) -> Result<&str> {
        match self {
            Sexpr::Atom(s) => Ok(s),
            Sexpr::List(_) => Err(Error::Parse("expected an atom".into())),
        }
    }

    fn as_list(&self, head: &str) -> Result<&[Sexpr]> {
        match self {
            Sexpr::List(items)
                if items.first().and_then(|h| match h {
                    Sexpr::Atom(s) => Some(s == head),
                    _ => None,
                }) == Some(true) =>
            {
                Ok(items)
            }
            _ => Err(Error::Parse(format!("expected a ({head} ...) form"))),
        }
    }
}

fn tokenize(input: &str) -> Result<Vec<String>> {
    let mut tokens = Vec::new();
    let mut current = String::new();
    for ch in input.chars() {
        match ch {
            '(' | ')' => {
                if !current.is_empty() {
                    tokens.push(std::mem::take(&mut current));
                }
                tokens.push(ch.to_string());
            }
            c if c.is_whitespace() => {
                if !current.is_empty() {
                    tokens.push(std::mem::take(&mut current));
                }
            }
            c => current.push(c),
        }
    }
    if !current.is_empty() {
        tokens.push(current);
    }
    if tokens.is_empty() {
        return Err(Error::Parse("empty formula".into()));
    }
    Ok(tokens)
}

fn parse_expr(tokens: &[String]) -> Result<(Sexpr, &[String])> {
    match tokens.split_first() {
        None => Err(Error::Parse("unexpected end of input".into())),
        Some((tok, mut rest)) if tok == "(" => {
            let mut items = Vec::new();
            loop {
                match rest.first() {
                    None => return Err(Error::Parse("unbalanced parentheses".into())),
                    Some(t) if t == ")" => return Ok((Sexpr::List(items), &rest[1..])),
                    Some(_) => {
                        let (item, next) = parse_expr(rest)?;
                        items.push(item);
                        rest = next;
                    }
                }
            }
        }
        Some((tok, _)) if tok == ")" => Err(Error::Parse("unexpected `)`".into())),
        Some((tok, rest)) => Ok((Sexpr::Atom(tok.clone()), rest)),
    }
}

fn parse_term(
    expr: &Sexpr,
    signature: &Signature,
    z_arity: usize,
    witnesses: usize,
) -> Result<Term> {
    match expr {
        Sexpr::Atom(s) if s == "x" => Ok(Term::Var(0)),
        Sexpr::Atom(s) if s == "y" => Ok(Term::Var(1)),
        Sexpr::Atom(s) => Err(Error::Parse(format!("unknown atom `{s}`"))),
        Sexpr::List(items) => {
            let head = items
                .first()
                .ok_or_else(|| Error::Parse("empty application".into()))?
                .as_atom()?;
            let index = |items: &[Sexpr], limit: usize| -> Result<usize> {
                let j: usize = items
                    .get(1)
                    .ok_or_else(|| Error::Parse(format!("`{head}` needs an index")))?
                    .as_atom()?
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad index in `{head}`")))?;
                if j >= limit {
                    return Err(Error::Parse(format!("`{head}` index {j} out of range")));
                }
                Ok(j)
            };
            match head {
                "z" => Ok(Term::Var(2 + index(items, z_arity)?)),
                "w" => Ok(Term::Var(2 + z_arity + index(items, witnesses)?)),
                "zero" => Ok(Term::Zero(index(items, usize::MAX)?)),
                "one" => Ok(Term::One(index(items, usize::MAX)?)),
                name => {
                    let op = signature
                        .index_of(name)
                        .ok_or_else(|| Error::Parse(format!("unknown symbol `{name}`")))?;
                    let args = items[1..]
                        .iter()
                        .map(|a| parse_term(a, signature, z_arity, witnesses))
                        .collect::<Result<Vec<_>>>()?;
                    Ok(Term::App(op, args))
                }
            }
        }
    }
}
