//! Exhaustive enumeration of small inverse semigroups, up to isomorphism.
//!
//! Cayley tables are filled cell by cell; a partial table is abandoned as
//! soon as some fully defined triple breaks associativity. Complete tables
//! are kept when every element has a unique inverse, then reduced to one
//! representative per isomorphism class (the lexicographically least
//! relabelling).

use std::collections::BTreeSet;

use super::InverseSemigroup;

const UNSET: usize = usize::MAX;

fn associative_so_far(t: &[usize], m: usize) -> bool {
    for a in 0..m {
        for b in 0..m {
            let ab = t[a * m + b];
            if ab == UNSET {
                continue;
            }
            for c in 0..m {
                let bc = t[b * m + c];
                if bc == UNSET {
                    continue;
                }
                let (l, r) = (t[ab * m + c], t[a * m + bc]);
                if l != UNSET && r != UNSET && l != r {
                    return false;
                }
            }
        }
    }
    true
}

fn fill(t: &mut Vec<usize>, cell: usize, m: usize, out: &mut Vec<Vec<usize>>) {
    if cell == m * m {
        out.push(t.clone());
        return;
    }
    for v in 0..m {
        t[cell] = v;
        if associative_so_far(t, m) {
            fill(t, cell + 1, m, out);
        }
    }
    t[cell] = UNSET;
}

/// Every associative table of order `m` (labelled).
pub fn semigroup_tables(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if m > 0 {
        fill(&mut vec![UNSET; m * m], 0, m, &mut out);
    }
    out
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(m - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, m - 1);
            out.push(q);
        }
    }
    out
}

fn canonical(t: &[usize], m: usize, perms: &[Vec<usize>]) -> Vec<usize> {
    perms
        .iter()
        .map(|p| {
            // p maps old labels to new labels
            let mut r = vec![0; m * m];
            for a in 0..m {
                for b in 0..m {
                    r[p[a] * m + p[b]] = p[t[a * m + b]];
                }
            }
            r
        })
        .min()
        .unwrap()
}

/// One representative of each isomorphism class of inverse semigroups of
/// order `m`, in a deterministic order.
pub fn inverse_semigroups_of_order(m: usize) -> Vec<InverseSemigroup> {
    let perms = permutations(m);
    let classes: BTreeSet<Vec<usize>> = semigroup_tables(m)
        .into_iter()
        .filter(|t| {
            let rows: Vec<Vec<usize>> = t.chunks(m).map(<[usize]>::to_vec).collect();
            InverseSemigroup::from_table(&rows, None).is_ok()
        })
        .map(|t| canonical(&t, m, &perms))
        .collect();
    classes
        .into_iter()
        .map(|t| {
            let rows: Vec<Vec<usize>> = t.chunks(m).map(<[usize]>::to_vec).collect();
            InverseSemigroup::from_table(&rows, None).expect("validated before relabelling")
        })
        .collect()
}

/// All inverse semigroups of order `1..=max_order`.
pub fn inverse_semigroups_up_to(max_order: usize) -> Vec<InverseSemigroup> {
    (1..=max_order).flat_map(inverse_semigroups_of_order).collect()
}
