use std::collections::{HashSet, VecDeque};

use super::coset::CosetTable;
use super::FpError;

/// A permutation of `0..degree`, stored as its image list.
pub type Perm = Vec<u32>;

/// Permutation group given by generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermGroupView {
    degree: usize,
    gens: Vec<Perm>,
}

pub fn perm_compose(p: &[u32], q: &[u32]) -> Perm {
    // apply p first, then q
    p.iter().map(|&i| q[i as usize]).collect()
}

pub fn perm_is_identity(p: &[u32]) -> bool {
    p.iter().enumerate().all(|(i, &x)| i as u32 == x)
}

/// Order of a permutation: lcm of its cycle lengths.
pub fn perm_order(p: &[u32]) -> u64 {
    let mut seen = vec![false; p.len()];
    let mut order = 1u64;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p[x] as usize;
            len += 1;
        }
        order = lcm(order, len);
    }
    order
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl PermGroupView {
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<Self, FpError> {
        if degree == 0 {
            return Err(FpError::Domain("degree must be positive".into()));
        }
        for g in &gens {
            if g.len() != degree {
                return Err(FpError::Domain("generator length differs from degree".into()));
            }
            let mut hit = vec![false; degree];
            for &x in g {
                if x as usize >= degree || std::mem::replace(&mut hit[x as usize], true) {
                    return Err(FpError::Domain("generator is not a bijection".into()));
                }
            }
        }
        Ok(PermGroupView { degree, gens })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn gens(&self) -> &[Perm] {
        &self.gens
    }

    /// All group elements, breadth-first from the identity, multiplying by generators
    /// on the right.
    pub fn elements(&self, element_bound: usize) -> Result<Vec<Perm>, FpError> {
        let identity: Perm = (0..self.degree as u32).collect();
        let mut seen: HashSet<Perm> = HashSet::new();
        let mut out = vec![identity.clone()];
        seen.insert(identity.clone());
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &self.gens {
                let h = perm_compose(&out[i], g);
                if !seen.contains(&h) {
                    if out.len() >= element_bound {
                        return Err(FpError::Capacity { live: out.len() + 1, limit: element_bound });
                    }
                    seen.insert(h.clone());
                    out.push(h);
                    queue.push_back(out.len() - 1);
                }
            }
        }
        Ok(out)
    }

    /// Orbit of point 0 is everything.
    pub fn is_transitive(&self) -> bool {
        let mut seen = vec![false; self.degree];
        seen[0] = true;
        let mut stack = vec![0usize];
        while let Some(x) = stack.pop() {
            for g in &self.gens {
                let y = g[x] as usize;
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// Permutation action of each generator on the rows of a complete coset table.
pub fn regular_representation(t: &CosetTable) -> Result<PermGroupView, FpError> {
    if !t.is_complete() {
        return Err(FpError::State("coset table is incomplete".into()));
    }
    let gens = (0..t.ngens())
        .map(|g| (0..t.nrows()).map(|c| t.get(c, 2 * g).unwrap() as u32).collect())
        .collect();
    PermGroupView::new(t.nrows(), gens)
}

/// Exponent of the group: lcm of the orders of all its elements.
pub fn perm_group_exponent(g: &PermGroupView, element_bound: usize) -> Result<u64, FpError> {
    Ok(g.elements(element_bound)?.iter().map(|p| perm_order(p)).fold(1, lcm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroup::{coset_enumerate, parse_presentation};

    fn rep(text: &str) -> PermGroupView {
        let p = parse_presentation(text).unwrap();
        regular_representation(&coset_enumerate(&p, &[], 10_000).unwrap()).unwrap()
    }

    #[test]
    fn cyclic_five_is_a_five_cycle() {
        let g = rep("gens: a\na^5");
        assert_eq!(g.degree(), 5);
        assert_eq!(perm_order(&g.gens()[0]), 5);
        assert!(g.is_transitive());
        assert_eq!(perm_group_exponent(&g, 100).unwrap(), 5);
    }

    #[test]
    fn trivial_group() {
        let g = rep("gens: a\na^2\na^3");
        assert_eq!(g.degree(), 1);
        assert!(perm_is_identity(&g.gens()[0]));
        assert_eq!(perm_group_exponent(&g, 10).unwrap(), 1);
    }

    #[test]
    fn burnside_504_generator_orders() {
        let g = rep("gens: a b\na^7\nb^2\n(ab)^3\n(a^3 b a^5 b a^3 b)^2");
        assert_eq!(g.degree(), 504);
        assert_eq!(perm_order(&g.gens()[0]), 7);
        assert_eq!(perm_order(&g.gens()[1]), 2);
        assert_eq!(g.elements(504).unwrap().len(), 504);
    }

    #[test]
    fn bound_exceeded() {
        let g = rep("gens: a b\na^2\nb^2\n(ab)^3");
        assert!(matches!(perm_group_exponent(&g, 5), Err(FpError::Capacity { .. })));
        assert_eq!(perm_group_exponent(&g, 6).unwrap(), 6);
    }

    #[test]
    fn incomplete_table_rejected() {
        let t = CosetTable::from_rows(vec!["a".into()], 1, vec![Some(0), None]).unwrap();
        assert!(matches!(regular_representation(&t), Err(FpError::State(_))));
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(PermGroupView::new(2, vec![vec![0, 0]]).is_err());
        assert!(PermGroupView::new(2, vec![vec![0]]).is_err());
    }
}
