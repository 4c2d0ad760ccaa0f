//! Property suites: the closure against the exhaustive partition oracle,
//! lattice laws on congruence lattices, the permutability/system lemma,
//! witness validation, and serialization round-trips.

mod common;

use centrax::{
    all_congruences, cg, fixtures, join, maltsev_witness, solve_system, Caps, Congruence,
    CongruenceSystem, FiniteAlgebra, PCFormula,
};
use proptest::prelude::*;

fn caps() -> Caps {
    Caps::default()
}

fn small_algebra() -> impl Strategy<Value = FiniteAlgebra> {
    (2usize..=5, 1usize..=2, any::<u64>())
        .prop_map(|(size, ops, seed)| fixtures::random_algebra(size, ops, seed).unwrap())
}

fn pair_set(size: usize) -> impl Strategy<Value = Vec<(usize, usize)>> {
    prop::collection::vec((0..size, 0..size), 1..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closure_matches_the_partition_oracle(algebra in small_algebra()) {
        let size = algebra.size;
        let runner = pair_set(size);
        proptest!(|(pairs in runner)| {
            let fast = cg(&algebra, &pairs);
            let oracle = common::least_congruence(&algebra, &pairs);
            prop_assert_eq!(fast.rep(), oracle.as_slice());
        });
    }

    #[test]
    fn witnesses_validate_for_random_generators(algebra in small_algebra()) {
        let size = algebra.size;
        proptest!(|(pairs in pair_set(size))| {
            let (left, right): (Vec<usize>, Vec<usize>) = pairs.iter().copied().unzip();
            let theta = cg(&algebra, &pairs);
            for a in 0..size {
                for b in 0..size {
                    if theta.related(a, b) {
                        let chain =
                            maltsev_witness(&algebra, a, b, &left, &right, &caps()).unwrap();
                        prop_assert!(chain.validate(&algebra).is_ok());
                        prop_assert_eq!(chain.len() % 2, 1);
                    }
                }
            }
        });
    }
}

#[test]
fn congruence_lattices_match_the_oracle_on_all_small_fixtures() {
    for algebra in [
        fixtures::chain_lattice(2).unwrap(),
        fixtures::chain_lattice(3).unwrap(),
        fixtures::two_by_two_lattice().unwrap(),
        fixtures::m3_lattice().unwrap(),
        fixtures::chain_meet_semilattice(4).unwrap(),
        fixtures::power_meet_semilattice(2).unwrap(),
        fixtures::power_join_semilattice(2).unwrap(),
        fixtures::zmod(6).unwrap(),
        fixtures::random_algebra(5, 2, 7).unwrap(),
        fixtures::random_algebra(6, 1, 8).unwrap(),
    ] {
        let computed: Vec<Vec<usize>> = all_congruences(&algebra, &caps())
            .unwrap()
            .iter()
            .map(|c| c.rep().to_vec())
            .collect();
        let oracle = common::all_congruence_reps(&algebra);
        assert_eq!(computed, oracle, "{}", algebra.name);
    }
}

#[test]
fn congruence_lattice_laws_hold_on_the_fixtures() {
    for algebra in [
        fixtures::two_by_two_lattice().unwrap(),
        fixtures::m3_lattice().unwrap(),
        fixtures::power_meet_semilattice(2).unwrap(),
        fixtures::zmod(6).unwrap(),
    ] {
        let cons = all_congruences(&algebra, &caps()).unwrap();
        for x in &cons {
            assert_eq!(&join(&algebra, x, x).unwrap(), x);
            assert_eq!(&x.meet(x).unwrap(), x);
            for y in &cons {
                let j = join(&algebra, x, y).unwrap();
                let m = x.meet(y).unwrap();
                assert_eq!(j, join(&algebra, y, x).unwrap());
                assert_eq!(m, y.meet(x).unwrap());
                // absorption
                assert_eq!(&join(&algebra, x, &m).unwrap(), x);
                assert_eq!(&x.meet(&j).unwrap(), x);
            }
        }
    }
}

#[test]
fn permutability_is_equivalent_to_system_solvability() {
    for algebra in [
        fixtures::chain_lattice(3).unwrap(),
        fixtures::two_by_two_lattice().unwrap(),
        fixtures::power_join_semilattice(2).unwrap(),
        fixtures::zmod(6).unwrap(),
    ] {
        let cons = all_congruences(&algebra, &caps()).unwrap();
        for theta in &cons {
            for delta in &cons {
                let joined = join(&algebra, theta, delta).unwrap();
                let all_solvable = (0..algebra.size).all(|x| {
                    (0..algebra.size).all(|y| {
                        if !joined.related(x, y) {
                            return true;
                        }
                        let system = CongruenceSystem {
                            entries: vec![(theta.clone(), x), (delta.clone(), y)],
                        };
                        matches!(solve_system(&algebra, &system), Ok(Some(_)))
                    })
                });
                assert_eq!(
                    theta.permutes(delta).unwrap(),
                    all_solvable,
                    "{}",
                    algebra.name
                );
            }
        }
    }
}

#[test]
fn composed_fixture_homomorphisms_validate() {
    let diag = fixtures::msl_diagonal().unwrap();
    let alpha = fixtures::alpha().unwrap();
    let through = diag.then(&alpha).unwrap();
    assert_eq!(through.map, vec![0, 7]);
    let proj = fixtures::msl_projection().unwrap();
    let round = diag.then(&proj).unwrap();
    assert_eq!(round.map, vec![0, 1]);
}

#[test]
fn formula_sexprs_round_trip() {
    let gen = fixtures::chain_meet_semilattice(2).unwrap();
    let synthesis = centrax::synthesize_right_formula(&gen, &caps()).unwrap();
    let rendered = synthesis.formula.to_sexpr(&gen.signature);
    let parsed = PCFormula::parse_sexpr(&rendered, &gen.signature).unwrap();
    assert_eq!(parsed, synthesis.formula);

    let meet = gen.signature.index_of("meet").unwrap();
    let by_hand = PCFormula {
        z_arity: 1,
        witnesses: 0,
        equations: vec![(
            centrax::Term::App(meet, vec![centrax::Term::Var(0), centrax::Term::Var(2)]),
            centrax::Term::App(meet, vec![centrax::Term::Var(1), centrax::Term::Var(2)]),
        )],
    };
    let rendered = by_hand.to_sexpr(&gen.signature);
    assert_eq!(
        rendered,
        "(formula (z-arity 1) (witnesses 0) (and (= (meet x (z 0)) (meet y (z 0)))))"
    );
    assert_eq!(PCFormula::parse_sexpr(&rendered, &gen.signature).unwrap(), by_hand);
}

#[test]
fn congruence_serialization_round_trips() {
    let algebra = fixtures::two_by_two_lattice().unwrap();
    for theta in all_congruences(&algebra, &caps()).unwrap() {
        let file = centrax::io::CongruenceFile::from_congruence(&algebra, &theta);
        let text = serde_json::to_string(&file).unwrap();
        let back: centrax::io::CongruenceFile = serde_json::from_str(&text).unwrap();
        let revalidated = Congruence::validated(&algebra, back.rep).unwrap();
        assert_eq!(revalidated, theta);
    }
}
