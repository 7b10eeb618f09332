#![allow(dead_code)]

use std::collections::BTreeSet;

use burnside_lab::fpgroup::{coset_enumerate, parse_presentation, regular_representation, CosetTable};

/// Presentations of groups of order at most 200 with their known orders.
pub const SMALL_GROUPS: [(&str, &str, usize); 20] = [
    ("cyclic 5", "gens: a\na^5", 5),
    ("trivial", "gens: a b\na b a' b^-2\nb a b' a^-2", 1),
    ("S3", "gens: a b\na^2\nb^2\n(ab)^3", 6),
    ("D4", "gens: a b\na^4\nb^2\n(ab)^2", 8),
    ("Q8", "gens: a b\na^4\na^2 b^-2\nb' a b a", 8),
    ("C2^3", "gens: a b c\na^2\nb^2\nc^2\na b a' b'\na c a' c'\nb c b' c'", 8),
    ("C3^2", "gens: a b\na^3\nb^3\na b a' b'", 9),
    ("A4", "gens: a b\na^2\nb^3\n(ab)^3", 12),
    ("D10", "gens: a b\na^10\nb^2\n(ab)^2", 20),
    ("Frobenius 21", "gens: a b\na^7\nb^3\nb' a b a^-2", 21),
    ("S4", "gens: a b\na^2\nb^3\n(ab)^4", 24),
    ("binary tetrahedral", "gens: a b\na^3 b^-3\na^3 (ab)^-2", 24),
    ("Heisenberg 27", "gens: a b\na^3\nb^3\n(ab)^3\n(a b')^3", 27),
    ("C4 x C6", "gens: a b\na^4\nb^6\na b a' b'", 24),
    ("binary octahedral", "gens: a b\na^4 b^-3\na^4 (ab)^-2", 48),
    ("A5", "gens: a b\na^2\nb^3\n(ab)^5", 60),
    ("binary icosahedral", "gens: a b\na^5 b^-3\na^5 (ab)^-2", 120),
    ("S5", "gens: a b\na^5\nb^2\n(ab)^4\n(b a' b a)^3\n(b a^-2 b a^2)^2", 120),
    ("PSL(2,7)", "gens: a b\na^2\nb^3\n(ab)^7\n(a b a' b')^4", 168),
    ("D100", "gens: a b\na^2\nb^2\n(ab)^100", 200),
];

pub const PSL504: &str = "gens: a b\na^7\nb^2\n(ab)^3\n(a^3 b a^5 b a^3 b)^2";

pub fn table(text: &str, cap: usize) -> CosetTable {
    coset_enumerate(&parse_presentation(text).unwrap(), &[], cap).unwrap()
}

/// Checks for one presentation; `Err` describes the first mismatch.
pub fn cross_check(text: &str, expected: usize) -> Result<(), String> {
    let p = parse_presentation(text).map_err(|e| e.to_string())?;
    let t = coset_enumerate(&p, &[], 10_000).map_err(|e| e.to_string())?;
    if t.nrows() != expected {
        return Err(format!("enumerated {} cosets, expected {expected}", t.nrows()));
    }
    if !t.is_complete() || !t.columns_are_inverse() {
        return Err("table incomplete or inverse columns inconsistent".into());
    }
    if !t.relators_hold(p.relators()) {
        return Err("relator trace audit failed".into());
    }
    let g = regular_representation(&t).map_err(|e| e.to_string())?;
    let bfs = g.elements(10_000).map_err(|e| e.to_string())?.len();
    if bfs != t.nrows() {
        return Err(format!("regular representation has {bfs} elements, table has {}", t.nrows()));
    }
    Ok(())
}

// Closure of matrices over Z/8 with plain integer arithmetic.

pub type M = [i64; 4];

fn mul8(x: M, y: M) -> M {
    let r = |v: i64| v.rem_euclid(8);
    [
        r(x[0] * y[0] + x[1] * y[2]),
        r(x[0] * y[1] + x[1] * y[3]),
        r(x[2] * y[0] + x[3] * y[2]),
        r(x[2] * y[1] + x[3] * y[3]),
    ]
}

fn idx(m: M) -> usize {
    (m[0] * 512 + m[1] * 64 + m[2] * 8 + m[3]) as usize
}

/// Fixpoint of right multiplication by the generators on a 4096-entry membership array.
pub fn brute_closure_mod8(gens: &[M]) -> BTreeSet<M> {
    let mut member = vec![false; 4096];
    let mut all: Vec<M> = vec![[1, 0, 0, 1]];
    member[idx([1, 0, 0, 1])] = true;
    loop {
        let before = all.len();
        for i in 0..all.len() {
            for &g in gens {
                let p = mul8(all[i], g);
                if !member[idx(p)] {
                    member[idx(p)] = true;
                    all.push(p);
                }
            }
        }
        if all.len() == before {
            break;
        }
    }
    all.into_iter().collect()
}
