//! Brute-force oracles, kept independent of the library's closure
//! algorithms: partitions are enumerated as restricted growth strings and
//! compatibility is checked straight from the definition.
#![allow(dead_code)] // each test target uses its own subset

use centrax::FiniteAlgebra;

/// All partitions of `{0..n-1}` as class-label vectors (`labels[0] = 0`,
/// each label at most one more than the maximum before it).
pub fn all_partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    grow(&mut labels, 1, &mut out);
    out
}

fn grow(labels: &mut Vec<usize>, index: usize, out: &mut Vec<Vec<usize>>) {
    if index == labels.len() {
        out.push(labels.clone());
        return;
    }
    let ceiling = labels[..index].iter().max().copied().unwrap_or(0) + 1;
    for label in 0..=ceiling {
        labels[index] = label;
        grow(labels, index + 1, out);
    }
    labels[index] = 0;
}

/// Compatibility from the definition, via representative substitution: a
/// partition respects `f` iff every tuple evaluates into the same class as
/// its componentwise-representative tuple.
pub fn is_compatible(algebra: &FiniteAlgebra, labels: &[usize]) -> bool {
    let mut rep_of_label = vec![usize::MAX; labels.len()];
    for (x, &label) in labels.iter().enumerate() {
        if rep_of_label[label] == usize::MAX {
            rep_of_label[label] = x;
        }
    }
    for (op, sym) in algebra.signature.symbols.iter().enumerate() {
        for args in algebra.tuples(sym.arity) {
            let reps: Vec<usize> = args.iter().map(|&a| rep_of_label[labels[a]]).collect();
            if labels[algebra.apply(op, &args)] != labels[algebra.apply(op, &reps)] {
                return false;
            }
        }
    }
    true
}

/// Least-element representative array of a label vector, the library's
/// canonical congruence form.
pub fn canonical_rep(labels: &[usize]) -> Vec<usize> {
    let mut first = vec![usize::MAX; labels.len()];
    let mut rep = vec![0; labels.len()];
    for (x, &label) in labels.iter().enumerate() {
        if first[label] == usize::MAX {
            first[label] = x;
        }
        rep[x] = first[label];
    }
    rep
}

/// Blockwise intersection of two label vectors.
fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    let n = a.len();
    let mut seen: Vec<(usize, usize, usize)> = Vec::new();
    let mut labels = vec![0; n];
    for x in 0..n {
        let key = (a[x], b[x], 0);
        match seen.iter().position(|&(p, q, _)| (p, q) == (key.0, key.1)) {
            Some(i) => labels[x] = seen[i].2,
            None => {
                let fresh = seen.len();
                seen.push((key.0, key.1, fresh));
                labels[x] = fresh;
            }
        }
    }
    labels
}

/// The least compatible partition containing all of `pairs`: the meet of
/// every compatible partition above them. Exhaustive, so only for small
/// carriers.
pub fn least_congruence(algebra: &FiniteAlgebra, pairs: &[(usize, usize)]) -> Vec<usize> {
    let mut current: Option<Vec<usize>> = None;
    for labels in all_partitions(algebra.size) {
        if !pairs.iter().all(|&(a, b)| labels[a] == labels[b]) {
            continue;
        }
        if !is_compatible(algebra, &labels) {
            continue;
        }
        current = Some(match current {
            None => labels,
            Some(acc) => intersect(&acc, &labels),
        });
    }
    canonical_rep(&current.expect("the universal partition is always compatible"))
}

/// Every congruence of the algebra, as canonical representative arrays.
pub fn all_congruence_reps(algebra: &FiniteAlgebra) -> Vec<Vec<usize>> {
    let mut reps: Vec<Vec<usize>> = all_partitions(algebra.size)
        .into_iter()
        .filter(|labels| is_compatible(algebra, labels))
        .map(|labels| canonical_rep(&labels))
        .collect();
    reps.sort();
    reps
}
