//! PSL(2, q) as linear fractional transformations over a finite field, with a
//! class-equation simplicity test and presentation homomorphism checks.

use std::collections::{HashMap, HashSet, VecDeque};
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{AlgebraError, Carrier, FiniteField, Mat2};
use crate::fpgroup::{gcd, Presentation, Word};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum PslError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("group exceeded {limit} elements")]
    Capacity { limit: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Element of a finite group given by concrete multiplication.
pub trait GroupElement: Clone + Eq + Hash + Ord {
    fn op(&self, other: &Self) -> Self;
    fn inv(&self) -> Self;
    fn is_identity(&self) -> bool;

    fn order(&self) -> u64 {
        let mut acc = self.clone();
        let mut k = 1;
        while !acc.is_identity() {
            acc = acc.op(self);
            k += 1;
        }
        k
    }
}

impl GroupElement for Mat2 {
    fn op(&self, other: &Self) -> Self {
        self.mul_unchecked(other)
    }

    fn inv(&self) -> Self {
        self.inverse().expect("group elements are invertible")
    }

    fn is_identity(&self) -> bool {
        Mat2::is_identity(self)
    }
}

/// Unit-determinant matrix up to scalars. Equality, hashing and ordering use the
/// canonical representative.
#[derive(Clone, Debug)]
pub struct ProjMat2 {
    rep: Mat2,
    canonical: [u32; 4],
}

impl ProjMat2 {
    pub fn new(m: Mat2) -> Result<Self, PslError> {
        let Carrier::Field(field) = m.carrier() else {
            return Err(PslError::Domain("projective matrices need a field carrier".into()));
        };
        if m.det() != 1 {
            return Err(PslError::Domain(format!("matrix {m} does not have determinant 1")));
        }
        let canonical = canonicalize(field, m.entries());
        Ok(ProjMat2 { rep: m, canonical })
    }

    pub fn rep(&self) -> &Mat2 {
        &self.rep
    }

    pub fn canonical(&self) -> [u32; 4] {
        self.canonical
    }

    fn field(&self) -> &Arc<FiniteField> {
        match self.rep.carrier() {
            Carrier::Field(f) => f,
            Carrier::Ring(_) => unreachable!("checked at construction"),
        }
    }
}

// Odd characteristic: scale so the first nonzero entry is 1. Characteristic 2
// has no nontrivial unit-determinant scalars, so the matrix is its own representative.
fn canonicalize(field: &FiniteField, e: [u32; 4]) -> [u32; 4] {
    if field.characteristic() == 2 {
        return e;
    }
    let lead = *e.iter().find(|&&x| x != 0).expect("invertible matrix has a nonzero entry");
    let s = field.inv(lead).expect("nonzero field element");
    e.map(|x| field.mul(s, x))
}

impl PartialEq for ProjMat2 {
    fn eq(&self, other: &Self) -> bool {
        self.canonical == other.canonical
    }
}

impl Eq for ProjMat2 {}

impl Hash for ProjMat2 {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.canonical.hash(state);
    }
}

impl PartialOrd for ProjMat2 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ProjMat2 {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.canonical.cmp(&other.canonical)
    }
}

impl GroupElement for ProjMat2 {
    fn op(&self, other: &Self) -> Self {
        let rep = self.rep.mul_unchecked(&other.rep);
        let canonical = canonicalize(self.field(), rep.entries());
        ProjMat2 { rep, canonical }
    }

    fn inv(&self) -> Self {
        let rep = self.rep.inverse().expect("unit determinant");
        let canonical = canonicalize(self.field(), rep.entries());
        ProjMat2 { rep, canonical }
    }

    fn is_identity(&self) -> bool {
        self.canonical == [1, 0, 0, 1]
    }
}

/// Breadth-first closure of `gens` under right multiplication by generators and inverses.
pub fn closure<T: GroupElement>(gens: &[T], identity: T, max_size: usize) -> Result<Vec<T>, PslError> {
    let steps: Vec<T> = gens.iter().flat_map(|g| [g.clone(), g.inv()]).collect();
    let mut seen: HashSet<T> = HashSet::from([identity.clone()]);
    let mut queue = VecDeque::from([identity]);
    let mut out = Vec::new();
    while let Some(x) = queue.pop_front() {
        for s in &steps {
            let y = x.op(s);
            if seen.insert(y.clone()) {
                if seen.len() > max_size {
                    return Err(PslError::Capacity { limit: max_size });
                }
                queue.push_back(y);
            }
        }
        out.push(x);
    }
    out.sort();
    Ok(out)
}

/// A finite group stored as its sorted element list.
#[derive(Clone, Debug)]
pub struct FiniteGroup<T> {
    elements: Vec<T>,
    index: HashMap<T, usize>,
}

impl<T: GroupElement> FiniteGroup<T> {
    /// Wraps a set of elements; duplicates are removed. Closure is not checked here.
    pub fn from_elements(mut elements: Vec<T>) -> Self {
        elements.sort();
        elements.dedup();
        let index = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        FiniteGroup { elements, index }
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: &T) -> bool {
        self.index.contains_key(x)
    }

    /// Checks closure on a deterministic sample of products.
    pub fn sampled_closed(&self) -> bool {
        let n = self.elements.len();
        let stride = (n / 23).max(1);
        let sample: Vec<&T> = self.elements.iter().step_by(stride).take(24).collect();
        sample.iter().all(|a| {
            sample.iter().all(|b| self.contains(&a.op(b))) && self.contains(&a.inv())
        })
    }
}

pub type ProjGroup = FiniteGroup<ProjMat2>;

/// PSL(2, q) by closure from `[[1,1],[0,1]]`, `[[g,0],[0,g^-1]]` and `[[0,1],[-1,0]]`.
pub fn build_psl2(field: Arc<FiniteField>, max_size: usize) -> Result<ProjGroup, PslError> {
    let carrier = Carrier::Field(Arc::clone(&field));
    let g = field.primitive_element();
    let gi = field.inv(g).expect("primitive element is nonzero");
    let minus_one = field.neg(1);
    let gens = vec![
        ProjMat2::new(Mat2::new(&carrier, 1, 1, 0, 1)?)?,
        ProjMat2::new(Mat2::new(&carrier, g as i64, 0, 0, gi as i64)?)?,
        ProjMat2::new(Mat2::new(&carrier, 0, 1, minus_one as i64, 0)?)?,
    ];
    let identity = ProjMat2::new(Mat2::identity(&carrier))?;
    Ok(FiniteGroup::from_elements(closure(&gens, identity, max_size)?))
}

/// |PSL(2, q)| = q(q^2 - 1) / gcd(2, q - 1).
pub fn psl2_order(q: u64) -> u64 {
    q * (q * q - 1) / gcd(2, q - 1)
}

/// Conjugacy class sizes of a finite group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjClassReport {
    /// Sorted ascending.
    pub class_sizes: Vec<usize>,
    /// Element order of each class, aligned with `class_sizes`.
    pub class_orders: Vec<u64>,
    pub order: usize,
}

pub fn conj_classes<T: GroupElement>(group: &FiniteGroup<T>) -> Result<ConjClassReport, PslError> {
    if group.is_empty() || !group.sampled_closed() {
        return Err(PslError::Domain("element set is not closed under multiplication".into()));
    }
    let n = group.len();
    let inverses: Vec<T> = group.elements.iter().map(GroupElement::inv).collect();
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<(usize, u64)> = Vec::new();
    for i in 0..n {
        if class_of[i] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let x = &group.elements[i];
        let mut size = 0;
        for (h, hi) in group.elements.iter().zip(&inverses) {
            let y = h.op(x).op(hi);
            let j = *group
                .index
                .get(&y)
                .ok_or_else(|| PslError::Domain("conjugate falls outside the element set".into()))?;
            if class_of[j] == usize::MAX {
                class_of[j] = id;
                size += 1;
            }
        }
        classes.push((size, x.order()));
    }
    classes.sort();
    Ok(ConjClassReport {
        class_sizes: classes.iter().map(|c| c.0).collect(),
        class_orders: classes.iter().map(|c| c.1).collect(),
        order: n,
    })
}

/// True iff no union of classes containing the identity class has size equal to a
/// proper nontrivial divisor of the order. The trivial group is not simple.
pub fn is_simple_by_class_equation(report: &ConjClassReport) -> bool {
    let n = report.order;
    if n <= 1 {
        return false;
    }
    // identity class is one of the size-1 classes; drop one of them
    let mut rest = report.class_sizes.clone();
    if let Some(pos) = rest.iter().position(|&s| s == 1) {
        rest.remove(pos);
    }
    let mut reachable = vec![false; n + 1];
    reachable[1] = true;
    for s in rest {
        for t in (1..=n - s).rev() {
            if reachable[t] {
                reachable[t + s] = true;
            }
        }
    }
    !(2..n).any(|d| n.is_multiple_of(d) && reachable[d])
}

fn evaluate<T: GroupElement>(w: &Word, images: &[T], inverses: &[T], identity: &T) -> T {
    w.letters().iter().fold(identity.clone(), |acc, &x| {
        let g = (x.unsigned_abs() - 1) as usize;
        acc.op(if x > 0 { &images[g] } else { &inverses[g] })
    })
}

fn identity_of(group: &ProjGroup) -> Result<ProjMat2, PslError> {
    group
        .elements
        .iter()
        .find(|e| e.is_identity())
        .cloned()
        .ok_or_else(|| PslError::Domain("group has no identity".into()))
}

/// Relators hold on `images` and the images generate all of `group`.
pub fn verify_presentation_hom(p: &Presentation, images: &[ProjMat2], group: &ProjGroup) -> Result<bool, PslError> {
    if images.len() != p.ngens() {
        return Err(PslError::Domain(format!(
            "{} images given for {} generators",
            images.len(),
            p.ngens()
        )));
    }
    if let Some(bad) = images.iter().find(|x| !group.contains(x)) {
        return Err(PslError::Domain(format!("image {} is not in the group", bad.rep())));
    }
    let identity = identity_of(group)?;
    let inverses: Vec<ProjMat2> = images.iter().map(GroupElement::inv).collect();
    if !p
        .relators()
        .iter()
        .all(|r| evaluate(r, images, &inverses, &identity).is_identity())
    {
        return Ok(false);
    }
    Ok(closure(images, identity, group.len())?.len() == group.len())
}

/// Exponent `k` of a relator of the form `x^k` in generator `gen` (1-based).
fn power_relator_exponent(w: &Word, gen: u32) -> Option<u64> {
    let first = *w.letters().first()?;
    (first.unsigned_abs() == gen && w.letters().iter().all(|&x| x == first)).then(|| w.len() as u64)
}

/// Searches generator images satisfying the relators, trying elements whose order
/// matches a power relator exactly first, then other compatible elements, each in
/// (order, canonical) order. With `require_generation` the images must also
/// generate the whole group.
pub fn search_presentation_images(
    p: &Presentation,
    group: &ProjGroup,
    require_generation: bool,
) -> Result<Option<Vec<ProjMat2>>, PslError> {
    if group.len() > 10_000 {
        return Err(PslError::Domain("group too large for pairwise image search".into()));
    }
    let identity = identity_of(group)?;
    let mut by_order: Vec<(u64, &ProjMat2)> = group.elements.iter().map(|e| (e.order(), e)).collect();
    by_order.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));

    let mut candidates: Vec<Vec<ProjMat2>> = Vec::new();
    for gen in 1..=p.ngens() as u32 {
        let k = p
            .relators()
            .iter()
            .filter_map(|r| power_relator_exponent(r, gen))
            .fold(0, gcd);
        let list: Vec<ProjMat2> = if k == 0 {
            by_order.iter().map(|(_, e)| (*e).clone()).collect()
        } else {
            let exact = by_order.iter().filter(|(o, _)| *o == k);
            let lower = by_order.iter().filter(|(o, _)| *o != k && k % *o == 0);
            exact.chain(lower).map(|(_, e)| (*e).clone()).collect()
        };
        candidates.push(list);
    }

    // relators checkable once the first j generators are assigned
    let ready_at: Vec<Vec<&Word>> = (1..=p.ngens())
        .map(|j| p.relators().iter().filter(|r| r.max_generator() as usize == j).collect())
        .collect();

    let mut chosen: Vec<ProjMat2> = Vec::new();
    let mut inverses: Vec<ProjMat2> = Vec::new();
    let found = assign(
        0,
        &candidates,
        &ready_at,
        &identity,
        &mut chosen,
        &mut inverses,
        &mut |imgs: &[ProjMat2]| {
            !require_generation
                || closure(imgs, identity.clone(), group.len()).map(|c| c.len()) == Ok(group.len())
        },
    );
    Ok(found.then_some(chosen))
}

fn assign(
    j: usize,
    candidates: &[Vec<ProjMat2>],
    ready_at: &[Vec<&Word>],
    identity: &ProjMat2,
    chosen: &mut Vec<ProjMat2>,
    inverses: &mut Vec<ProjMat2>,
    accept: &mut dyn FnMut(&[ProjMat2]) -> bool,
) -> bool {
    if j == candidates.len() {
        return accept(chosen);
    }
    for c in &candidates[j] {
        chosen.push(c.clone());
        inverses.push(c.inv());
        let ok = ready_at[j]
            .iter()
            .all(|r| evaluate(r, chosen, inverses, identity).is_identity());
        if ok && assign(j + 1, candidates, ready_at, identity, chosen, inverses, accept) {
            return true;
        }
        chosen.pop();
        inverses.pop();
    }
    false
}
