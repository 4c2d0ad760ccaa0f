//! Built-in algebras and homomorphisms: bounded chains, Boolean powers,
//! semilattice reducts, the five-element lattice with three incomparable
//! atoms, modular rings, and a seeded random-algebra generator.

use crate::algebra::{
    product, validate_homomorphism, FiniteAlgebra, Homomorphism, Signature,
};
use crate::error::{Error, Result};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Either kind of catalog entry.
#[derive(Debug, Clone)]
pub enum Fixture {
    Algebra(FiniteAlgebra),
    Homomorphism(Homomorphism),
}

/// Parameters for the string-keyed builder.
#[derive(Debug, Clone, Default)]
pub struct FixtureParams {
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub size: Option<usize>,
    pub ops: Option<usize>,
    pub seed: Option<u64>,
}

pub fn trivial() -> Result<FiniteAlgebra> {
    let sig = lattice_signature()?;
    FiniteAlgebra::new(
        "1",
        1,
        sig,
        vec![vec![0], vec![0], vec![0], vec![0]],
        vec![0],
        vec![0],
        None,
    )
}

fn lattice_signature() -> Result<Signature> {
    Signature::new([("meet", 2), ("join", 2), ("0", 0), ("1", 0)])
}

fn meet_signature() -> Result<Signature> {
    Signature::new([("meet", 2), ("0", 0), ("1", 0)])
}

fn join_signature() -> Result<Signature> {
    Signature::new([("join", 2), ("0", 0), ("1", 0)])
}

/// The bounded `n`-element chain as a lattice.
pub fn chain_lattice(n: usize) -> Result<FiniteAlgebra> {
    if n == 0 {
        return Err(Error::BadFixtureParams("chain needs n >= 1".into()));
    }
    let meet: Vec<usize> = (0..n).flat_map(|a| (0..n).map(move |b| a.min(b))).collect();
    let join: Vec<usize> = (0..n).flat_map(|a| (0..n).map(move |b| a.max(b))).collect();
    FiniteAlgebra::new(
        n.to_string(),
        n,
        lattice_signature()?,
        vec![meet, join, vec![0], vec![n - 1]],
        vec![0],
        vec![n - 1],
        None,
    )
}

/// The bounded `n`-element chain as a meet semilattice.
pub fn chain_meet_semilattice(n: usize) -> Result<FiniteAlgebra> {
    if n == 0 {
        return Err(Error::BadFixtureParams("chain needs n >= 1".into()));
    }
    let meet: Vec<usize> = (0..n).flat_map(|a| (0..n).map(move |b| a.min(b))).collect();
    FiniteAlgebra::new(
        format!("{n}-meet"),
        n,
        meet_signature()?,
        vec![meet, vec![0], vec![n - 1]],
        vec![0],
        vec![n - 1],
        None,
    )
}

/// The bounded `n`-element chain as a join semilattice.
pub fn chain_join_semilattice(n: usize) -> Result<FiniteAlgebra> {
    if n == 0 {
        return Err(Error::BadFixtureParams("chain needs n >= 1".into()));
    }
    let join: Vec<usize> = (0..n).flat_map(|a| (0..n).map(move |b| a.max(b))).collect();
    FiniteAlgebra::new(
        format!("{n}-join"),
        n,
        join_signature()?,
        vec![join, vec![0], vec![n - 1]],
        vec![0],
        vec![n - 1],
        None,
    )
}

fn power(base: Result<FiniteAlgebra>, k: usize, name: String) -> Result<FiniteAlgebra> {
    if k == 0 {
        return Err(Error::BadFixtureParams("power needs k >= 1".into()));
    }
    let base = base?;
    let factors: Vec<&FiniteAlgebra> = std::iter::repeat_n(&base, k).collect();
    let mut alg = product(&factors)?.algebra;
    alg.name = name;
    Ok(alg)
}

/// The Boolean lattice `2^k` as a bounded distributive lattice.
pub fn power_lattice(k: usize) -> Result<FiniteAlgebra> {
    power(chain_lattice(2), k, format!("2^{k}"))
}

/// `2^k` as a bounded meet semilattice.
pub fn power_meet_semilattice(k: usize) -> Result<FiniteAlgebra> {
    power(chain_meet_semilattice(2), k, format!("2^{k}-meet"))
}

/// `2^k` as a bounded join semilattice.
pub fn power_join_semilattice(k: usize) -> Result<FiniteAlgebra> {
    power(chain_join_semilattice(2), k, format!("2^{k}-join"))
}

/// The diamond `2 x 2`, named `C` to match its role as a sublattice of `D`.
pub fn two_by_two_lattice() -> Result<FiniteAlgebra> {
    let mut alg = power_lattice(2)?;
    alg.name = "C".into();
    Ok(alg)
}

/// `D = {0, a, b, c, 1}` with `a, b, c` pairwise incomparable.
pub fn m3_lattice() -> Result<FiniteAlgebra> {
    m3_tables(lattice_signature()?, true, true, "D")
}

/// The meet reduct of `D`, a bounded meet semilattice.
pub fn m3_meet_semilattice() -> Result<FiniteAlgebra> {
    m3_tables(meet_signature()?, true, false, "D-meet")
}

fn m3_tables(
    sig: Signature,
    with_meet: bool,
    with_join: bool,
    name: &str,
) -> Result<FiniteAlgebra> {
    let n = 5;
    // 0 = bottom, 1..3 = atoms a, b, c, 4 = top
    let leq = |x: usize, y: usize| x == y || x == 0 || y == 4;
    let meet: Vec<usize> = (0..n)
        .flat_map(|x| {
            (0..n).map(move |y| {
                if leq(x, y) {
                    x
                } else if leq(y, x) {
                    y
                } else {
                    0
                }
            })
        })
        .collect();
    let join: Vec<usize> = (0..n)
        .flat_map(|x| {
            (0..n).map(move |y| {
                if leq(x, y) {
                    y
                } else if leq(y, x) {
                    x
                } else {
                    4
                }
            })
        })
        .collect();
    let mut tables = Vec::new();
    if with_meet {
        tables.push(meet);
    }
    if with_join {
        tables.push(join);
    }
    tables.push(vec![0]);
    tables.push(vec![4]);
    FiniteAlgebra::new(
        name,
        n,
        sig,
        tables,
        vec![0],
        vec![4],
        Some(
            ["0", "a", "b", "c", "1"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
        ),
    )
}

/// `Z_n` as a commutative ring with unit.
pub fn zmod(n: usize) -> Result<FiniteAlgebra> {
    if n == 0 {
        return Err(Error::BadFixtureParams("zmod needs n >= 1".into()));
    }
    let add: Vec<usize> = (0..n).flat_map(|a| (0..n).map(move |b| (a + b) % n)).collect();
    let mul: Vec<usize> = (0..n).flat_map(|a| (0..n).map(move |b| (a * b) % n)).collect();
    let neg: Vec<usize> = (0..n).map(|a| (n - a) % n).collect();
    FiniteAlgebra::new(
        format!("Z{n}"),
        n,
        Signature::new([("add", 2), ("mul", 2), ("neg", 1), ("0", 0), ("1", 0)])?,
        vec![add, mul, neg, vec![0], vec![1 % n]],
        vec![0],
        vec![1 % n],
        None,
    )
}

/// Seeded random algebra with the given number of binary operations.
/// Reproducible bit-exactly per seed; deliberately exempt from the
/// zero-one collapse requirement.
pub fn random_algebra(size: usize, ops: usize, seed: u64) -> Result<FiniteAlgebra> {
    if size == 0 || ops == 0 {
        return Err(Error::BadFixtureParams(
            "random needs size >= 1 and ops >= 1".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let symbols: Vec<(String, usize)> = (0..ops).map(|i| (format!("f{i}"), 2)).collect();
    let tables: Vec<Vec<usize>> = (0..ops)
        .map(|_| (0..size * size).map(|_| rng.gen_range(0..size)).collect())
        .collect();
    FiniteAlgebra::new(
        format!("random-{size}-{ops}-{seed}"),
        size,
        Signature::new(symbols)?,
        tables,
        vec![0],
        vec![size - 1],
        None,
    )
}

/// The meet-semilattice homomorphism `α : 2×2 → 2×2×2` with
/// `α(0,1) = (1,0,0)` and `α(1,0) = (0,0,1)`.
pub fn alpha() -> Result<Homomorphism> {
    let dom = power_meet_semilattice(2)?;
    let cod = power_meet_semilattice(3)?;
    validate_homomorphism(&dom, &cod, vec![0, 4, 1, 7])
}

/// The inclusion of the diamond `C` into `D` sending the atoms of `C` to
/// `a` and `b`.
pub fn c_into_d() -> Result<Homomorphism> {
    let dom = two_by_two_lattice()?;
    let cod = m3_lattice()?;
    validate_homomorphism(&dom, &cod, vec![0, 1, 2, 4])
}

/// Diagonal embedding of the two-element meet semilattice into its square.
pub fn msl_diagonal() -> Result<Homomorphism> {
    let dom = chain_meet_semilattice(2)?;
    let cod = power_meet_semilattice(2)?;
    validate_homomorphism(&dom, &cod, vec![0, 3])
}

/// First projection of the meet-semilattice square onto the two-chain.
pub fn msl_projection() -> Result<Homomorphism> {
    let dom = power_meet_semilattice(2)?;
    let cod = chain_meet_semilattice(2)?;
    validate_homomorphism(&dom, &cod, vec![0, 0, 1, 1])
}

/// Diagonal embedding of the two-chain lattice into the diamond.
pub fn lattice_diagonal() -> Result<Homomorphism> {
    let dom = chain_lattice(2)?;
    let cod = two_by_two_lattice()?;
    validate_homomorphism(&dom, &cod, vec![0, 3])
}

/// String-keyed catalog used by the command line.
pub fn build(name: &str, params: &FixtureParams) -> Result<Fixture> {
    let n = || {
        params
            .n
            .or(params.size)
            .ok_or_else(|| Error::BadFixtureParams(format!("`{name}` needs --n")))
    };
    let k = || {
        params
            .k
            .or(params.n)
            .ok_or_else(|| Error::BadFixtureParams(format!("`{name}` needs --k")))
    };
    let alg = |a: Result<FiniteAlgebra>| a.map(Fixture::Algebra);
    match name {
        "trivial" => alg(trivial()),
        "chain" => alg(chain_lattice(n()?)),
        "power" => alg(power_lattice(k()?)),
        "diamond" | "C" => alg(two_by_two_lattice()),
        "m3" | "D" => alg(m3_lattice()),
        "m3-meet" | "D-meet" => alg(m3_meet_semilattice()),
        "chain-meet" => alg(chain_meet_semilattice(n()?)),
        "power-meet" => alg(power_meet_semilattice(k()?)),
        "chain-join" => alg(chain_join_semilattice(n()?)),
        "power-join" => alg(power_join_semilattice(k()?)),
        "zmod" => alg(zmod(n()?)),
        "random" => {
            let size = params
                .size
                .or(params.n)
                .ok_or_else(|| Error::BadFixtureParams("`random` needs --size".into()))?;
            alg(random_algebra(
                size,
                params.ops.unwrap_or(2),
                params.seed.unwrap_or(0),
            ))
        }
        "alpha" => alpha().map(Fixture::Homomorphism),
        "c-into-d" => c_into_d().map(Fixture::Homomorphism),
        "msl-diagonal" => msl_diagonal().map(Fixture::Homomorphism),
        "msl-projection" => msl_projection().map(Fixture::Homomorphism),
        "lattice-diagonal" => lattice_diagonal().map(Fixture::Homomorphism),
        _ => Err(Error::UnknownFixture(name.to_string())),
    }
}

/// Resolves `name` or `name:arg[,arg..]` specs, as used for the `dom`/`cod`
/// fields of homomorphism files.
pub fn build_spec(spec: &str) -> Result<Fixture> {
    let (name, rest) = match spec.split_once(':') {
        Some((name, rest)) => (name, Some(rest)),
        None => (spec, None),
    };
    let mut params = FixtureParams::default();
    if let Some(rest) = rest {
        let values: Vec<u64> = rest
            .split(',')
            .map(|p| {
                p.trim()
                    .parse()
                    .map_err(|_| Error::BadFixtureParams(format!("bad parameter `{p}`")))
            })
            .collect::<Result<_>>()?;
        match values.as_slice() {
            [a] => {
                params.n = Some(*a as usize);
                params.k = Some(*a as usize);
            }
            [a, b] => {
                params.size = Some(*a as usize);
                params.ops = Some(*b as usize);
            }
            [a, b, c] => {
                params.size = Some(*a as usize);
                params.ops = Some(*b as usize);
                params.seed = Some(*c);
            }
            _ => return Err(Error::BadFixtureParams(format!("bad spec `{spec}`"))),
        }
    }
    build(name, &params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::check_zero_one;

    #[test]
    fn alpha_is_the_paper_map() {
        let alpha = alpha().unwrap();
        // (0,1) ↦ (1,0,0) and (1,0) ↦ (0,0,1)
        assert_eq!(alpha.map, vec![0, 4, 1, 7]);
    }

    #[test]
    fn c_into_d_is_an_embedding() {
        let inc = c_into_d().unwrap();
        assert!(inc.is_injective());
        assert!(!inc.is_surjective());
    }

    #[test]
    fn random_algebras_are_reproducible() {
        let a = random_algebra(5, 2, 42).unwrap();
        let b = random_algebra(5, 2, 42).unwrap();
        assert_eq!(a, b);
        let c = random_algebra(5, 2, 43).unwrap();
        assert_ne!(a.tables, c.tables);
    }

    #[test]
    fn shipped_fixtures_pass_zero_one() {
        for alg in [
            trivial().unwrap(),
            chain_lattice(3).unwrap(),
            power_lattice(3).unwrap(),
            m3_lattice().unwrap(),
            chain_meet_semilattice(4).unwrap(),
            power_meet_semilattice(2).unwrap(),
            chain_join_semilattice(3).unwrap(),
            power_join_semilattice(2).unwrap(),
            m3_meet_semilattice().unwrap(),
            zmod(6).unwrap(),
        ] {
            assert!(check_zero_one(&alg), "{} fails zero-one", alg.name);
        }
    }

    #[test]
    fn builder_resolves_specs() {
        assert!(matches!(
            build_spec("chain:4").unwrap(),
            Fixture::Algebra(a) if a.size == 4
        ));
        assert!(matches!(
            build_spec("power-meet:3").unwrap(),
            Fixture::Algebra(a) if a.size == 8
        ));
        assert!(matches!(build_spec("alpha").unwrap(), Fixture::Homomorphism(_)));
        assert!(build_spec("nope").is_err());
    }
}
