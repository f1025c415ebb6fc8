//! Finite carriers, binary relations between them, and total functions.
//!
//! A [`Rel`] is a dense boolean matrix whose rows are packed into `u64`
//! words, so composition and residuation reduce to word-parallel row
//! operations. Every binary operation checks that the carriers involved
//! coincide and reports an [`Error::CarrierMismatch`] otherwise.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use smallvec::{smallvec, SmallVec};

use crate::error::Error;

/// Relations over carriers of up to eight elements stay inline.
type Words = SmallVec<[u64; 8]>;
type Image = SmallVec<[usize; 8]>;

const WORD: usize = 64;

/// A named finite set with an ordered list of distinct element labels.
///
/// Element `i` is identified with label `i`; the order never changes after
/// construction. Two sets are the same carrier when both name and labels
/// agree.
#[derive(Clone)]
pub struct FinSet {
    name: String,
    labels: Vec<String>,
    positions: HashMap<String, usize>,
}

impl FinSet {
    pub fn new<I, S>(name: impl Into<String>, labels: I) -> Result<Arc<Self>, Error>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let name = name.into();
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut positions = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if positions.insert(label.clone(), i).is_some() {
                return Err(Error::DuplicateLabel {
                    set: name,
                    label: label.clone(),
                });
            }
        }
        Ok(Arc::new(FinSet {
            name,
            labels,
            positions,
        }))
    }

    /// A set named `name` with labels `{prefix}0 .. {prefix}{len-1}`.
    pub fn indexed(name: impl Into<String>, prefix: &str, len: usize) -> Arc<Self> {
        Self::new(name, (0..len).map(|i| format!("{prefix}{i}")))
            .expect("indexed labels are distinct")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.positions.get(label).copied()
    }

    /// Like [`FinSet::position`], but an unknown label is an error.
    pub fn require(&self, label: &str) -> Result<usize, Error> {
        self.position(label).ok_or_else(|| Error::UnknownLabel {
            set: self.name.clone(),
            label: label.to_string(),
        })
    }

    fn check_index(&self, index: usize) -> Result<(), Error> {
        if index < self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                set: self.name.clone(),
                index,
                len: self.len(),
            })
        }
    }
}

impl PartialEq for FinSet {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.labels == other.labels
    }
}

impl Eq for FinSet {}

impl fmt::Debug for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{{{}}}", self.name, self.labels.join(","))
    }
}

/// Carrier identity: pointer equality first, structural equality otherwise.
pub fn same_set(a: &Arc<FinSet>, b: &Arc<FinSet>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn require_same(op: &'static str, expected: &Arc<FinSet>, found: &Arc<FinSet>) -> Result<(), Error> {
    if same_set(expected, found) {
        Ok(())
    } else {
        Err(Error::CarrierMismatch {
            op,
            expected: expected.name().to_string(),
            found: found.name().to_string(),
        })
    }
}

fn ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(w, &word)| {
        let mut bits = word;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let tz = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w * WORD + tz)
            }
        })
    })
}

/// A binary relation `src ⇸ dst`.
#[derive(Clone)]
pub struct Rel {
    src: Arc<FinSet>,
    dst: Arc<FinSet>,
    stride: usize,
    words: Words,
}

impl Rel {
    pub fn empty(src: &Arc<FinSet>, dst: &Arc<FinSet>) -> Self {
        let stride = dst.len().div_ceil(WORD);
        Rel {
            src: src.clone(),
            dst: dst.clone(),
            stride,
            words: smallvec![0; stride * src.len()],
        }
    }

    pub fn full(src: &Arc<FinSet>, dst: &Arc<FinSet>) -> Self {
        let mut rel = Self::empty(src, dst);
        let row = rel.full_row();
        for i in 0..src.len() {
            rel.row_mut(i).copy_from_slice(&row);
        }
        rel
    }

    /// The diagonal relation on `set`.
    pub fn identity(set: &Arc<FinSet>) -> Self {
        let mut rel = Self::empty(set, set);
        for i in 0..set.len() {
            rel.set(i, i);
        }
        rel
    }

    pub fn from_pairs<I>(src: &Arc<FinSet>, dst: &Arc<FinSet>, pairs: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut rel = Self::empty(src, dst);
        for (i, j) in pairs {
            src.check_index(i)?;
            dst.check_index(j)?;
            rel.set(i, j);
        }
        Ok(rel)
    }

    pub fn from_label_pairs<'a, I>(src: &Arc<FinSet>, dst: &Arc<FinSet>, pairs: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut rel = Self::empty(src, dst);
        for (a, b) in pairs {
            let i = src.require(a)?;
            let j = dst.require(b)?;
            rel.set(i, j);
        }
        Ok(rel)
    }

    pub fn from_fn(src: &Arc<FinSet>, dst: &Arc<FinSet>, mut related: impl FnMut(usize, usize) -> bool) -> Self {
        let mut rel = Self::empty(src, dst);
        for i in 0..src.len() {
            for j in 0..dst.len() {
                if related(i, j) {
                    rel.set(i, j);
                }
            }
        }
        rel
    }

    /// Decodes a relation from the low `|src|·|dst|` bits of `mask`, cell
    /// `(i, j)` at bit `i·|dst| + j`. Used by exhaustive enumerators.
    pub fn from_mask(src: &Arc<FinSet>, dst: &Arc<FinSet>, mask: u64) -> Self {
        let cols = dst.len();
        assert!(src.len() * cols <= 64, "relation does not fit a 64-bit mask");
        Self::from_fn(src, dst, |i, j| mask >> (i * cols + j) & 1 == 1)
    }

    pub fn src(&self) -> &Arc<FinSet> {
        &self.src
    }

    pub fn dst(&self) -> &Arc<FinSet> {
        &self.dst
    }

    pub fn is_square(&self) -> bool {
        same_set(&self.src, &self.dst)
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.words[i * self.stride + j / WORD] >> (j % WORD) & 1 == 1
    }

    /// Number of related pairs.
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Related pairs in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.src.len()).flat_map(move |i| self.row_ones(i).map(move |j| (i, j)))
    }

    /// Elements `j` with `(i, j)` related, ascending.
    pub fn row_ones(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        ones(self.row(i))
    }

    /// Row `i` as a bitmask; only valid while `|dst| <= 64`.
    pub fn row_mask(&self, i: usize) -> u64 {
        debug_assert!(self.dst.len() <= WORD);
        if self.stride == 0 {
            0
        } else {
            self.row(i)[0]
        }
    }

    /// Labels of the pair `(i, j)`.
    pub fn label_pair(&self, (i, j): (usize, usize)) -> (String, String) {
        (self.src.label(i).to_string(), self.dst.label(j).to_string())
    }

    pub fn converse(&self) -> Rel {
        let mut out = Rel::empty(&self.dst, &self.src);
        for (i, j) in self.pairs() {
            out.set(j, i);
        }
        out
    }

    /// Sequential composition `self ⨾ next`.
    pub fn compose(&self, next: &Rel) -> Result<Rel, Error> {
        require_same("compose", &self.dst, &next.src)?;
        let mut out = Rel::empty(&self.src, &next.dst);
        for i in 0..self.src.len() {
            let start = i * out.stride;
            for b in ones(self.row(i)) {
                let row = next.row(b);
                for (acc, w) in out.words[start..start + out.stride].iter_mut().zip(row) {
                    *acc |= w;
                }
            }
        }
        Ok(out)
    }

    /// Inclusion `self ⊆ other`.
    pub fn leq(&self, other: &Rel) -> Result<bool, Error> {
        Ok(self.excess_over(other)?.is_none())
    }

    /// Relation equality; mismatched carriers are an error rather than `false`.
    pub fn equals(&self, other: &Rel) -> Result<bool, Error> {
        self.same_shape("equals", other)?;
        Ok(self.words == other.words)
    }

    /// The first pair (row-major) of `self` missing from `other`.
    pub fn excess_over(&self, other: &Rel) -> Result<Option<(usize, usize)>, Error> {
        self.same_shape("leq", other)?;
        for i in 0..self.src.len() {
            let (mine, theirs) = (self.row(i), other.row(i));
            for (w, (a, b)) in mine.iter().zip(theirs).enumerate() {
                let extra = a & !b;
                if extra != 0 {
                    return Ok(Some((i, w * WORD + extra.trailing_zeros() as usize)));
                }
            }
        }
        Ok(None)
    }

    /// The first pair on which `self` and `other` disagree.
    pub fn first_difference(&self, other: &Rel) -> Result<Option<(usize, usize)>, Error> {
        Ok(self.excess_over(other)?.or(other.excess_over(self)?))
    }

    /// Left residual `self \ z`: for `self: A ⇸ B` and `z: A ⇸ C`, the pairs
    /// `(b, c)` such that every `a` related to `b` is related to `c`.
    pub fn left_residual(&self, z: &Rel) -> Result<Rel, Error> {
        require_same("left_residual", &self.src, &z.src)?;
        let transposed = self.converse();
        let mut out = Rel::full(&self.dst, &z.dst);
        for b in 0..self.dst.len() {
            let start = b * out.stride;
            for a in ones(transposed.row(b)) {
                let row = z.row(a);
                for (acc, w) in out.words[start..start + out.stride].iter_mut().zip(row) {
                    *acc &= w;
                }
            }
        }
        Ok(out)
    }

    /// Right residual `self / y` for `self: A ⇸ C` and `y: B ⇸ C`, the
    /// largest `x: A ⇸ B` with `x ⨾ y ⊆ self`.
    pub fn right_residual(&self, y: &Rel) -> Result<Rel, Error> {
        require_same("right_residual", &self.dst, &y.dst)?;
        Ok(y.converse().left_residual(&self.converse())?.converse())
    }

    pub fn union(&self, other: &Rel) -> Result<Rel, Error> {
        self.same_shape("union", other)?;
        let mut out = self.clone();
        out.words.iter_mut().zip(&other.words).for_each(|(a, b)| *a |= b);
        Ok(out)
    }

    pub fn intersection(&self, other: &Rel) -> Result<Rel, Error> {
        self.same_shape("intersection", other)?;
        let mut out = self.clone();
        out.words.iter_mut().zip(&other.words).for_each(|(a, b)| *a &= b);
        Ok(out)
    }

    /// Reflexive-transitive closure of a square relation (Warshall on rows).
    pub fn reflexive_transitive_closure(&self) -> Result<Rel, Error> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                op: "closure",
                src: self.src.name().to_string(),
                dst: self.dst.name().to_string(),
            });
        }
        let n = self.src.len();
        let mut out = self.clone();
        for i in 0..n {
            out.set(i, i);
        }
        for k in 0..n {
            let pivot = out.row(k).to_vec();
            for i in 0..n {
                if out.contains(i, k) {
                    out.row_mut(i).iter_mut().zip(&pivot).for_each(|(a, b)| *a |= b);
                }
            }
        }
        Ok(out)
    }

    fn same_shape(&self, op: &'static str, other: &Rel) -> Result<(), Error> {
        require_same(op, &self.src, &other.src)?;
        require_same(op, &self.dst, &other.dst)
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.words[i * self.stride..(i + 1) * self.stride]
    }

    fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.words[i * self.stride..(i + 1) * self.stride]
    }

    fn full_row(&self) -> Vec<u64> {
        let mut row = vec![u64::MAX; self.stride];
        let tail = self.dst.len() % WORD;
        if tail != 0 {
            row[self.stride - 1] = (1u64 << tail) - 1;
        }
        row
    }

    fn set(&mut self, i: usize, j: usize) {
        self.words[i * self.stride + j / WORD] |= 1 << (j % WORD);
    }
}

impl PartialEq for Rel {
    fn eq(&self, other: &Self) -> bool {
        same_set(&self.src, &other.src) && same_set(&self.dst, &other.dst) && self.words == other.words
    }
}

impl Eq for Rel {}

impl fmt::Debug for Rel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ⇸ {} {{", self.src.name(), self.dst.name())?;
        for (n, p) in self.pairs().enumerate() {
            let (a, b) = self.label_pair(p);
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({a},{b})")?;
        }
        write!(f, "}}")
    }
}

/// A total function between finite sets.
#[derive(Clone, PartialEq, Eq)]
pub struct FnMap {
    src: Arc<FinSet>,
    dst: Arc<FinSet>,
    image: Image,
}

impl FnMap {
    pub fn new(src: &Arc<FinSet>, dst: &Arc<FinSet>, image: Vec<usize>) -> Result<Self, Error> {
        Self::collect(src, dst, image)
    }

    /// Checks and stores the images of `0..|src|` in order.
    pub fn collect(src: &Arc<FinSet>, dst: &Arc<FinSet>, image: impl IntoIterator<Item = usize>) -> Result<Self, Error> {
        let image: Image = image.into_iter().collect();
        if image.len() != src.len() {
            let label = src.labels().get(image.len()).cloned().unwrap_or_default();
            return Err(Error::NotTotal {
                src: src.name().to_string(),
                dst: dst.name().to_string(),
                label,
            });
        }
        for &j in &image {
            dst.check_index(j)?;
        }
        Ok(FnMap {
            src: src.clone(),
            dst: dst.clone(),
            image,
        })
    }

    pub fn identity(set: &Arc<FinSet>) -> Self {
        FnMap {
            src: set.clone(),
            dst: set.clone(),
            image: (0..set.len()).collect(),
        }
    }

    pub fn from_fn(src: &Arc<FinSet>, dst: &Arc<FinSet>, map: impl FnMut(usize) -> usize) -> Result<Self, Error> {
        Self::collect(src, dst, (0..src.len()).map(map))
    }

    /// Builds a function from `(argument, image)` label pairs; every source
    /// element needs exactly one entry.
    pub fn from_labels<'a, I>(src: &Arc<FinSet>, dst: &Arc<FinSet>, entries: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut image = vec![None; src.len()];
        for (a, b) in entries {
            let i = src.require(a)?;
            let j = dst.require(b)?;
            if image[i].replace(j).is_some() {
                return Err(Error::DuplicateLabel {
                    set: src.name().to_string(),
                    label: a.to_string(),
                });
            }
        }
        let image = image
            .into_iter()
            .enumerate()
            .map(|(i, j)| {
                j.ok_or_else(|| Error::NotTotal {
                    src: src.name().to_string(),
                    dst: dst.name().to_string(),
                    label: src.label(i).to_string(),
                })
            })
            .collect::<Result<Image, _>>()?;
        Ok(FnMap {
            src: src.clone(),
            dst: dst.clone(),
            image,
        })
    }

    pub fn src(&self) -> &Arc<FinSet> {
        &self.src
    }

    pub fn dst(&self) -> &Arc<FinSet> {
        &self.dst
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// The graph `{(a, f(a))}` as a relation `src ⇸ dst`.
    pub fn graph(&self) -> Rel {
        let mut rel = Rel::empty(&self.src, &self.dst);
        for (i, &j) in self.image.iter().enumerate() {
            rel.set(i, j);
        }
        rel
    }

    /// The converse graph `{(f(a), a)}` as a relation `dst ⇸ src`.
    pub fn inverse_graph(&self) -> Rel {
        let mut rel = Rel::empty(&self.dst, &self.src);
        for (i, &j) in self.image.iter().enumerate() {
            rel.set(j, i);
        }
        rel
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &FnMap) -> Result<FnMap, Error> {
        require_same("compose functions", &first.dst, &self.src)?;
        Ok(FnMap {
            src: first.src.clone(),
            dst: self.dst.clone(),
            image: first.image.iter().map(|&j| self.image[j]).collect(),
        })
    }

    /// Pointwise equality; mismatched carriers are an error.
    pub fn pointwise_eq(&self, other: &FnMap) -> Result<bool, Error> {
        require_same("function equality", &self.src, &other.src)?;
        require_same("function equality", &self.dst, &other.dst)?;
        Ok(self.image == other.image)
    }

    /// The first argument on which `self` and `other` differ.
    pub fn first_difference(&self, other: &FnMap) -> Result<Option<usize>, Error> {
        self.pointwise_eq(other)?;
        Ok(self.image.iter().zip(&other.image).position(|(a, b)| a != b))
    }
}

impl fmt::Debug for FnMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} → {} [", self.src.name(), self.dst.name())?;
        for (i, &j) in self.image.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}↦{}", self.src.label(i), self.dst.label(j))?;
        }
        write!(f, "]")
    }
}
