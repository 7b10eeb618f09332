//! Felsch-style Todd-Coxeter coset enumeration.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::presentation::Presentation;
use super::word::{letter_column, Word};
use super::FpError;

/// Default cap on live cosets.
pub const DEFAULT_MAX_COSETS: usize = 200_000;

const NONE: u32 = u32::MAX;

/// Right action of the generators and their inverses on cosets.
///
/// Cosets are numbered from 0 internally; coset 0 is the subgroup itself.
/// Column `2i` holds generator `i`, column `2i+1` its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    names: Vec<String>,
    nrows: usize,
    action: Vec<Option<u32>>,
}

/// JSON export: `{"nrows": N, "gens": [...], "action": [...]}` with 1-based coset
/// numbers, row-major over columns `a, a^-1, b, b^-1, ...`; `null` marks an
/// undefined entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetTableJson {
    pub nrows: usize,
    pub gens: Vec<String>,
    pub action: Vec<Option<u32>>,
}

impl CosetTable {
    /// Builds a table from raw 0-based entries, checking shape and range.
    pub fn from_rows(names: Vec<String>, nrows: usize, action: Vec<Option<u32>>) -> Result<Self, FpError> {
        if names.is_empty() || nrows == 0 {
            return Err(FpError::Domain("table needs at least one generator and one row".into()));
        }
        if action.len() != nrows * 2 * names.len() {
            return Err(FpError::Domain(format!(
                "action has {} entries, expected {}",
                action.len(),
                nrows * 2 * names.len()
            )));
        }
        if action.iter().flatten().any(|&t| t as usize >= nrows) {
            return Err(FpError::Domain("action entry out of range".into()));
        }
        Ok(CosetTable { names, nrows, action })
    }

    pub fn ngens(&self) -> usize {
        self.names.len()
    }

    pub fn ncols(&self) -> usize {
        2 * self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    /// Every entry defined.
    pub fn is_complete(&self) -> bool {
        self.action.iter().all(Option::is_some)
    }

    pub fn get(&self, coset: usize, col: usize) -> Option<usize> {
        self.action[coset * self.ncols() + col].map(|t| t as usize)
    }

    /// Image of `coset` under a word, or `None` if the trace hits an undefined entry.
    pub fn trace(&self, coset: usize, word: &Word) -> Option<usize> {
        word.letters()
            .iter()
            .try_fold(coset, |c, &x| self.get(c, letter_column(x)))
    }

    /// Generator and inverse columns are mutually inverse permutations.
    pub fn columns_are_inverse(&self) -> bool {
        (0..self.nrows).all(|c| {
            (0..self.ncols()).all(|col| match self.get(c, col) {
                Some(d) => self.get(d, col ^ 1) == Some(c),
                None => false,
            })
        })
    }

    /// Every relator traced from every coset returns to that coset.
    pub fn relators_hold(&self, relators: &[Word]) -> bool {
        relators
            .iter()
            .all(|r| (0..self.nrows).all(|c| self.trace(c, r) == Some(c)))
    }

    /// Words labelling a breadth-first spanning tree from coset 0 (coset `i` is
    /// reached by `words[i]`).
    pub fn spanning_words(&self) -> Vec<Option<Word>> {
        let mut words: Vec<Option<Word>> = vec![None; self.nrows];
        words[0] = Some(Word::identity());
        let mut queue = VecDeque::from([0usize]);
        while let Some(c) = queue.pop_front() {
            for col in 0..self.ncols() {
                if let Some(d) = self.get(c, col) {
                    if words[d].is_none() {
                        let x = super::word::column_letter(col);
                        words[d] = Some(words[c].as_ref().unwrap().mul(&Word::new([x])));
                        queue.push_back(d);
                    }
                }
            }
        }
        words
    }

    pub fn to_json(&self) -> CosetTableJson {
        CosetTableJson {
            nrows: self.nrows,
            gens: self.names.clone(),
            action: self.action.iter().map(|e| e.map(|t| t + 1)).collect(),
        }
    }

    pub fn from_json(json: &CosetTableJson) -> Result<Self, FpError> {
        let mut action = Vec::with_capacity(json.action.len());
        for e in &json.action {
            action.push(match e {
                Some(0) => return Err(FpError::Domain("coset numbers are 1-based".into())),
                Some(t) => Some(t - 1),
                None => None,
            });
        }
        CosetTable::from_rows(json.gens.clone(), json.nrows, action)
    }

    /// Compact single-line JSON, the canonical export used for hashing and golden files.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("coset table serializes")
    }
}

struct Enumerator {
    ncols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    next_slot: usize,
    live: usize,
    max_cosets: usize,
    // cyclic conjugates of relators and their inverses, as column sequences,
    // grouped by first column
    conjugates: Vec<Vec<Vec<usize>>>,
    all_conjugates: Vec<Vec<usize>>,
    deductions: Vec<(u32, usize)>,
    merge_queue: Vec<u32>,
}

impl Enumerator {
    fn new(p: &Presentation, max_cosets: usize) -> Self {
        let ncols = 2 * p.ngens();
        let mut set: BTreeSet<Vec<usize>> = BTreeSet::new();
        for r in p.relators() {
            for w in [r.clone(), r.inverse()] {
                for i in 0..w.len() {
                    set.insert(w.rotate(i).letters().iter().map(|&x| letter_column(x)).collect());
                }
            }
        }
        let mut conjugates = vec![Vec::new(); ncols];
        for w in &set {
            conjugates[w[0]].push(w.clone());
        }
        // relators in given order first, so scans follow the presentation order
        let mut all_conjugates: Vec<Vec<usize>> = Vec::new();
        for r in p.relators() {
            all_conjugates.push(r.letters().iter().map(|&x| letter_column(x)).collect());
        }
        for w in &set {
            if !all_conjugates.contains(w) {
                all_conjugates.push(w.clone());
            }
        }
        let capacity = 2 * max_cosets + 2;
        let mut e = Enumerator {
            ncols,
            table: Vec::new(),
            parent: Vec::new(),
            next_slot: 0,
            live: 0,
            max_cosets,
            conjugates,
            all_conjugates,
            deductions: Vec::new(),
            merge_queue: Vec::new(),
        };
        e.table.reserve(ncols * capacity.min(1 << 16));
        e.alloc();
        e
    }

    #[inline]
    fn entry(&self, c: u32, col: usize) -> u32 {
        self.table[c as usize * self.ncols + col]
    }

    #[inline]
    fn set(&mut self, c: u32, col: usize, d: u32) {
        self.table[c as usize * self.ncols + col] = d;
    }

    #[inline]
    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn alloc(&mut self) -> u32 {
        let c = self.next_slot as u32;
        self.next_slot += 1;
        self.table.extend(std::iter::repeat_n(NONE, self.ncols));
        self.parent.push(c);
        self.live += 1;
        c
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut x = c;
        while self.parent[x as usize] != root {
            let next = self.parent[x as usize];
            self.parent[x as usize] = root;
            x = next;
        }
        root
    }

    fn define(&mut self, c: u32, col: usize) -> Result<(), FpError> {
        if self.live >= self.max_cosets {
            return Err(FpError::Capacity { live: self.live, limit: self.max_cosets });
        }
        let d = self.alloc();
        self.set(c, col, d);
        self.set(d, col ^ 1, c);
        self.deductions.push((c, col));
        Ok(())
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, kill) = if a < b { (a, b) } else { (b, a) };
        self.parent[kill as usize] = keep;
        self.live -= 1;
        self.merge_queue.push(kill);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge_queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.merge_queue.len() {
            let dead = self.merge_queue[i];
            i += 1;
            for col in 0..self.ncols {
                let d = self.entry(dead, col);
                if d == NONE {
                    continue;
                }
                let inv = col ^ 1;
                if self.entry(d, inv) == dead {
                    self.set(d, inv, NONE);
                }
                let mu = self.rep(dead);
                let nu = self.rep(d);
                let mu_x = self.entry(mu, col);
                if mu_x != NONE {
                    self.merge(nu, mu_x);
                } else {
                    let nu_inv = self.entry(nu, inv);
                    if nu_inv != NONE {
                        self.merge(mu, nu_inv);
                    } else {
                        self.set(mu, col, nu);
                        self.set(nu, inv, mu);
                        self.deductions.push((mu, col));
                    }
                }
            }
        }
    }

    /// Scans `word` (as columns) at coset `c`, deducing a single missing entry or a
    /// coincidence when possible. Defines nothing.
    fn scan(&mut self, c: u32, word: &[usize]) {
        let n = word.len();
        let mut f = c;
        let mut i = 0;
        while i < n {
            let t = self.entry(f, word[i]);
            if t == NONE {
                break;
            }
            f = t;
            i += 1;
        }
        if i == n {
            if f != c {
                self.coincidence(f, c);
            }
            return;
        }
        let mut b = c;
        let mut j = n;
        while j > i {
            let t = self.entry(b, word[j - 1] ^ 1);
            if t == NONE {
                break;
            }
            b = t;
            j -= 1;
        }
        if j == i {
            self.coincidence(f, b);
        } else if j == i + 1 {
            let col = word[i];
            self.set(f, col, b);
            self.set(b, col ^ 1, f);
            self.deductions.push((f, col));
        }
    }

    fn process_deductions(&mut self) {
        while let Some((c, col)) = self.deductions.pop() {
            if !self.is_live(c) {
                continue;
            }
            for k in 0..self.conjugates[col].len() {
                if !self.is_live(c) {
                    break;
                }
                let w = std::mem::take(&mut self.conjugates[col][k]);
                self.scan(c, &w);
                self.conjugates[col][k] = w;
            }
            if !self.is_live(c) {
                continue;
            }
            let d = self.entry(c, col);
            if d == NONE || !self.is_live(d) {
                continue;
            }
            let inv = col ^ 1;
            for k in 0..self.conjugates[inv].len() {
                if !self.is_live(d) {
                    break;
                }
                let w = std::mem::take(&mut self.conjugates[inv][k]);
                self.scan(d, &w);
                self.conjugates[inv][k] = w;
            }
        }
    }

    /// Traces `word` at coset 0, defining new cosets until the loop closes.
    fn scan_and_fill_origin(&mut self, word: &[usize]) -> Result<(), FpError> {
        loop {
            let n = word.len();
            let mut f = 0u32;
            let mut i = 0;
            while i < n && self.entry(f, word[i]) != NONE {
                f = self.entry(f, word[i]);
                i += 1;
            }
            if i == n {
                if f != 0 {
                    self.coincidence(f, 0);
                    self.process_deductions();
                }
                return Ok(());
            }
            let mut b = 0u32;
            let mut j = n;
            while j > i && self.entry(b, word[j - 1] ^ 1) != NONE {
                b = self.entry(b, word[j - 1] ^ 1);
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                self.process_deductions();
                return Ok(());
            }
            if j == i + 1 {
                self.set(f, word[i], b);
                self.set(b, word[i] ^ 1, f);
                self.deductions.push((f, word[i]));
                self.process_deductions();
                return Ok(());
            }
            self.define(f, word[i])?;
            self.process_deductions();
        }
    }

    fn first_gap(&self, from: usize) -> Option<(u32, usize)> {
        (from..self.next_slot).find_map(|c| {
            let c = c as u32;
            if !self.is_live(c) {
                return None;
            }
            (0..self.ncols).find(|&col| self.entry(c, col) == NONE).map(|col| (c, col))
        })
    }

    /// Renumbers live cosets densely, preserving definition order.
    fn compact(&mut self) {
        let mut map = vec![NONE; self.next_slot];
        let mut n = 0u32;
        for c in 0..self.next_slot {
            if self.parent[c] == c as u32 {
                map[c] = n;
                n += 1;
            }
        }
        let mut table = Vec::with_capacity(n as usize * self.ncols);
        for c in 0..self.next_slot {
            if map[c] == NONE {
                continue;
            }
            for col in 0..self.ncols {
                let t = self.table[c * self.ncols + col];
                table.push(if t == NONE { NONE } else { map[self.rep_const(t) as usize] });
            }
        }
        self.table = table;
        self.parent = (0..n).collect();
        self.next_slot = n as usize;
    }

    fn rep_const(&self, mut c: u32) -> u32 {
        while self.parent[c as usize] != c {
            c = self.parent[c as usize];
        }
        c
    }

    /// Lookahead: scans every relator conjugate at every live coset.
    fn lookahead(&mut self) {
        for c in 0..self.next_slot as u32 {
            for k in 0..self.all_conjugates.len() {
                if !self.is_live(c) {
                    break;
                }
                let w = std::mem::take(&mut self.all_conjugates[k]);
                self.scan(c, &w);
                self.all_conjugates[k] = w;
                self.process_deductions();
            }
        }
    }

    fn relators_close(&self) -> bool {
        (0..self.next_slot as u32).filter(|&c| self.is_live(c)).all(|c| {
            self.all_conjugates.iter().all(|w| {
                let mut f = c;
                for &col in w {
                    f = self.entry(f, col);
                    if f == NONE {
                        return false;
                    }
                }
                f == c
            })
        })
    }

    fn run(&mut self, subgroup: &[Vec<usize>]) -> Result<(), FpError> {
        for h in subgroup {
            if !h.is_empty() {
                self.scan_and_fill_origin(h)?;
            }
        }
        let mut cursor = 0usize;
        loop {
            match self.first_gap(cursor) {
                Some((c, col)) => {
                    cursor = c as usize;
                    if self.next_slot >= 2 * self.max_cosets + 2 {
                        self.compact();
                        cursor = 0;
                        continue;
                    }
                    self.define(c, col)?;
                    self.process_deductions();
                }
                None => {
                    // complete; confirm from the start and audit relators
                    if let Some((c, _)) = self.first_gap(0) {
                        cursor = c as usize;
                        continue;
                    }
                    if self.relators_close() {
                        return Ok(());
                    }
                    self.lookahead();
                    cursor = 0;
                }
            }
        }
    }

    /// Standardized table: cosets renumbered in breadth-first order from coset 0.
    fn standardize(&mut self, names: Vec<String>) -> CosetTable {
        let mut order = vec![NONE; self.next_slot];
        let mut queue = VecDeque::from([0u32]);
        order[0] = 0;
        let mut visited = vec![0u32];
        while let Some(c) = queue.pop_front() {
            for col in 0..self.ncols {
                let d = self.rep(self.entry(c, col));
                if order[d as usize] == NONE {
                    order[d as usize] = visited.len() as u32;
                    visited.push(d);
                    queue.push_back(d);
                }
            }
        }
        let nrows = visited.len();
        let mut action = Vec::with_capacity(nrows * self.ncols);
        for &c in &visited {
            for col in 0..self.ncols {
                let d = self.rep(self.entry(c, col));
                action.push(Some(order[d as usize]));
            }
        }
        CosetTable { names, nrows, action }
    }
}

/// Enumerates the cosets of the subgroup generated by `subgens` in the group
/// presented by `p`. With no subgroup generators the row count is the group order.
pub fn coset_enumerate(p: &Presentation, subgens: &[Word], max_cosets: usize) -> Result<CosetTable, FpError> {
    for h in subgens {
        if h.max_generator() as usize > p.ngens() {
            return Err(FpError::Domain(format!("subgroup generator {h:?} uses an unknown generator")));
        }
    }
    if max_cosets == 0 {
        return Err(FpError::Domain("max_cosets must be positive".into()));
    }
    let mut e = Enumerator::new(p, max_cosets);
    let sub: Vec<Vec<usize>> = subgens
        .iter()
        .map(|h| h.letters().iter().map(|&x| letter_column(x)).collect())
        .collect();
    e.run(&sub)?;
    let table = e.standardize(p.names().to_vec());
    debug_assert!(table.columns_are_inverse());
    Ok(table)
}

/// Order of the presented group.
pub fn group_order(p: &Presentation, max_cosets: usize) -> Result<usize, FpError> {
    coset_enumerate(p, &[], max_cosets).map(|t| t.nrows())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroup::parse_presentation;

    fn order(text: &str) -> usize {
        let p = parse_presentation(text).unwrap();
        let t = coset_enumerate(&p, &[], DEFAULT_MAX_COSETS).unwrap();
        assert!(t.is_complete());
        assert!(t.columns_are_inverse());
        assert!(t.relators_hold(p.relators()));
        t.nrows()
    }

    #[test]
    fn cyclic_of_order_five() {
        assert_eq!(order("gens: a\na^5"), 5);
    }

    #[test]
    fn coprime_powers_collapse() {
        assert_eq!(order("gens: a\na^2\na^3"), 1);
    }

    #[test]
    fn dihedral_of_order_six() {
        assert_eq!(order("gens: a b\na^2\nb^2\n(ab)^3"), 6);
    }

    #[test]
    fn burnside_504() {
        assert_eq!(order("gens: a b\na^7\nb^2\n(ab)^3\n(a^3 b a^5 b a^3 b)^2"), 504);
    }

    #[test]
    fn free_group_hits_capacity() {
        let p = parse_presentation("gens: a b\na^2").unwrap();
        match coset_enumerate(&p, &[], 1000) {
            Err(FpError::Capacity { limit, .. }) => assert_eq!(limit, 1000),
            other => panic!("expected capacity error, got {other:?}"),
        }
    }

    #[test]
    fn subgroup_index() {
        // S3 = <a, b | a^2, b^3, (ab)^2>; <b> has index 2, <a> index 3
        let p = parse_presentation("gens: a b\na^2\nb^3\n(ab)^2").unwrap();
        let t = coset_enumerate(&p, &[Word::new([2])], 100).unwrap();
        assert_eq!(t.nrows(), 2);
        assert_eq!(t.trace(0, &Word::new([2])), Some(0));
        let t = coset_enumerate(&p, &[Word::new([1])], 100).unwrap();
        assert_eq!(t.nrows(), 3);
    }

    #[test]
    fn deterministic_output() {
        let p = parse_presentation("gens: a b\na^7\nb^2\n(ab)^3\n(a^3 b a^5 b a^3 b)^2").unwrap();
        let t1 = coset_enumerate(&p, &[], DEFAULT_MAX_COSETS).unwrap();
        let t2 = coset_enumerate(&p, &[], DEFAULT_MAX_COSETS).unwrap();
        assert_eq!(t1.to_json_string(), t2.to_json_string());
    }

    #[test]
    fn json_round_trip_and_validation() {
        let p = parse_presentation("gens: a\na^3").unwrap();
        let t = coset_enumerate(&p, &[], 10).unwrap();
        assert_eq!(t.to_json_string(), r#"{"nrows":3,"gens":["a"],"action":[2,3,3,1,1,2]}"#);
        let back = CosetTable::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
        let bad = CosetTableJson { nrows: 1, gens: vec!["a".into()], action: vec![Some(0), None] };
        assert!(CosetTable::from_json(&bad).is_err());
        let partial = CosetTableJson { nrows: 1, gens: vec!["a".into()], action: vec![Some(1), None] };
        assert!(!CosetTable::from_json(&partial).unwrap().is_complete());
    }

    #[test]
    fn compaction_preserves_result() {
        // small cap forces compaction passes when coincidences free many slots
        let p = parse_presentation("gens: a b\na^2\nb^3\n(ab)^5").unwrap();
        let t = coset_enumerate(&p, &[], 60).unwrap();
        assert_eq!(t.nrows(), 60);
        assert!(t.relators_hold(p.relators()));
    }
}
