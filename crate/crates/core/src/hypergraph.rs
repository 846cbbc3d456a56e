//! k-partite k-uniform hypergraphs with class-local vertex indexing.
//!
//! Every edge is stored as a k-tuple whose i-th entry is a local index into
//! class `i`, so legality (one vertex per class) holds by construction.

use std::fmt;

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// An edge: position `i` holds the local index of its vertex in class `i`.
pub type Edge = SmallVec<[usize; 4]>;

/// Largest product of class sizes for which edge membership uses a dense bitset.
const DENSE_MEMBERSHIP_LIMIT: usize = 1 << 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexRef {
    pub class: usize,
    pub index: usize,
}

impl VertexRef {
    pub fn new(class: usize, index: usize) -> Self {
        Self { class, index }
    }
}

impl fmt::Display for VertexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}:{}", self.class, self.index)
    }
}

/// A vertex set meeting each class at most once, kept sorted by class.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LegalSet(SmallVec<[VertexRef; 4]>);

impl LegalSet {
    pub fn new(vertices: impl IntoIterator<Item = VertexRef>) -> Result<Self> {
        let mut v: SmallVec<[VertexRef; 4]> = vertices.into_iter().collect();
        v.sort();
        for w in v.windows(2) {
            if w[0].class == w[1].class {
                return Err(Error::NotLegal(w[0].class));
            }
        }
        Ok(Self(v))
    }

    pub fn vertices(&self) -> &[VertexRef] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A vertex set with the same number of vertices in each of the `k` classes.
///
/// Stored per class as sorted local indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BalancedSet {
    per_class: Vec<Vec<usize>>,
}

impl BalancedSet {
    pub fn new(k: usize, vertices: impl IntoIterator<Item = VertexRef>) -> Result<Self> {
        let mut per_class = vec![Vec::new(); k];
        for v in vertices {
            if v.class >= k {
                return Err(Error::VertexOutOfRange {
                    class: v.class,
                    index: v.index,
                });
            }
            per_class[v.class].push(v.index);
        }
        Self::from_classes(per_class)
    }

    pub fn from_classes(mut per_class: Vec<Vec<usize>>) -> Result<Self> {
        for c in per_class.iter_mut() {
            c.sort_unstable();
            if c.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::NotBalanced("repeated vertex".into()));
            }
        }
        if let Some(first) = per_class.first() {
            if per_class.iter().any(|c| c.len() != first.len()) {
                let counts: Vec<usize> = per_class.iter().map(Vec::len).collect();
                return Err(Error::NotBalanced(format!("per-class counts {counts:?}")));
            }
        }
        Ok(Self { per_class })
    }

    pub fn k(&self) -> usize {
        self.per_class.len()
    }

    /// Vertices per class.
    pub fn part_size(&self) -> usize {
        self.per_class.first().map_or(0, Vec::len)
    }

    pub fn len(&self) -> usize {
        self.k() * self.part_size()
    }

    pub fn is_empty(&self) -> bool {
        self.part_size() == 0
    }

    pub fn class(&self, c: usize) -> &[usize] {
        &self.per_class[c]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.per_class
    }

    pub fn contains(&self, v: VertexRef) -> bool {
        self.per_class
            .get(v.class)
            .is_some_and(|c| c.binary_search(&v.index).is_ok())
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexRef> + '_ {
        self.per_class
            .iter()
            .enumerate()
            .flat_map(|(c, idx)| idx.iter().map(move |&i| VertexRef::new(c, i)))
    }

    pub fn is_disjoint(&self, other: &BalancedSet) -> bool {
        self.vertices().all(|v| !other.contains(v))
    }
}

/// Immutable k-partite k-graph.
#[derive(Clone)]
pub struct KPartiteHypergraph {
    class_sizes: Vec<usize>,
    edges: Vec<Edge>,
    /// `incidence[class][index]` lists ids of edges through that vertex.
    incidence: Vec<Vec<Vec<usize>>>,
    strides: Vec<usize>,
    membership: Option<FixedBitSet>,
}

impl fmt::Debug for KPartiteHypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("KPartiteHypergraph")
            .field("class_sizes", &self.class_sizes)
            .field("edges", &self.edges.len())
            .finish()
    }
}

impl PartialEq for KPartiteHypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.class_sizes == other.class_sizes && self.edges == other.edges
    }
}

impl Eq for KPartiteHypergraph {}

impl KPartiteHypergraph {
    /// Builds a hypergraph, rejecting out-of-range indices and wrong arities.
    /// Duplicate edges collapse; edges end up in lexicographic order.
    pub fn new<I, E>(k: usize, class_sizes: &[usize], edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[usize]>,
    {
        if k < 2 {
            return Err(Error::InvalidUniformity(k));
        }
        if class_sizes.len() != k {
            return Err(Error::ClassCount {
                expected: k,
                got: class_sizes.len(),
            });
        }
        let mut list: Vec<Edge> = Vec::new();
        for e in edges {
            let e = e.as_ref();
            if e.len() != k {
                return Err(Error::EdgeArity {
                    edge: e.to_vec(),
                    expected: k,
                    got: e.len(),
                });
            }
            for (class, (&index, &size)) in e.iter().zip(class_sizes).enumerate() {
                if index >= size {
                    return Err(Error::IndexOutOfRange {
                        edge: e.to_vec(),
                        class,
                        index,
                        size,
                    });
                }
            }
            list.push(Edge::from_slice(e));
        }
        list.sort_unstable();
        list.dedup();
        Ok(Self::from_sorted(class_sizes.to_vec(), list))
    }

    pub fn empty(class_sizes: &[usize]) -> Result<Self> {
        Self::new(class_sizes.len(), class_sizes, std::iter::empty::<Edge>())
    }

    /// All n^k legal k-tuples.
    pub fn complete(k: usize, n: usize) -> Result<Self> {
        let sizes = vec![n; k];
        Self::new(k, &sizes, all_tuples(&sizes))
    }

    fn from_sorted(class_sizes: Vec<usize>, edges: Vec<Edge>) -> Self {
        let mut incidence: Vec<Vec<Vec<usize>>> =
            class_sizes.iter().map(|&n| vec![Vec::new(); n]).collect();
        for (id, e) in edges.iter().enumerate() {
            for (c, &i) in e.iter().enumerate() {
                incidence[c][i].push(id);
            }
        }
        let mut strides = vec![1usize; class_sizes.len()];
        let mut total: Option<usize> = Some(1);
        for c in (0..class_sizes.len()).rev() {
            strides[c] = total.unwrap_or(0);
            total = total.and_then(|t| t.checked_mul(class_sizes[c]));
        }
        let membership = match total {
            Some(t) if t <= DENSE_MEMBERSHIP_LIMIT => {
                let mut bits = FixedBitSet::with_capacity(t);
                for e in &edges {
                    bits.insert(e.iter().zip(&strides).map(|(i, s)| i * s).sum());
                }
                Some(bits)
            }
            _ => None,
        };
        Self {
            class_sizes,
            edges,
            incidence,
            strides,
            membership,
        }
    }

    pub fn k(&self) -> usize {
        self.class_sizes.len()
    }

    pub fn class_sizes(&self) -> &[usize] {
        &self.class_sizes
    }

    /// Common class size, if all classes have the same size.
    pub fn uniform_class_size(&self) -> Option<usize> {
        let first = *self.class_sizes.first()?;
        self.class_sizes
            .iter()
            .all(|&n| n == first)
            .then_some(first)
    }

    pub fn vertex_count(&self) -> usize {
        self.class_sizes.iter().sum()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> &Edge {
        &self.edges[id]
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexRef> + '_ {
        self.class_sizes
            .iter()
            .enumerate()
            .flat_map(|(c, &n)| (0..n).map(move |i| VertexRef::new(c, i)))
    }

    pub fn check_vertex(&self, v: VertexRef) -> Result<()> {
        if v.class < self.k() && v.index < self.class_sizes[v.class] {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                class: v.class,
                index: v.index,
            })
        }
    }

    /// Ids of edges through `v`. Panics if `v` is out of range.
    pub fn incident(&self, v: VertexRef) -> &[usize] {
        &self.incidence[v.class][v.index]
    }

    pub fn vertex_degree(&self, v: VertexRef) -> usize {
        self.incident(v).len()
    }

    pub fn contains_edge(&self, e: &[usize]) -> bool {
        if e.len() != self.k() || e.iter().zip(&self.class_sizes).any(|(&i, &n)| i >= n) {
            return false;
        }
        match &self.membership {
            Some(bits) => bits.contains(e.iter().zip(&self.strides).map(|(i, s)| i * s).sum()),
            None => self.edges.binary_search_by(|x| x.as_slice().cmp(e)).is_ok(),
        }
    }

    /// Number of (k−|T|)-sets completing `T` to an edge.
    ///
    /// Scans only the edges through the member of `T` with the smallest degree.
    pub fn degree(&self, t: &LegalSet) -> Result<usize> {
        if t.is_empty() {
            return Err(Error::InvalidParameter("degree of the empty set".into()));
        }
        for &v in t.vertices() {
            self.check_vertex(v)?;
        }
        let pivot = t
            .vertices()
            .iter()
            .min_by_key(|&&v| self.vertex_degree(v))
            .copied()
            .expect("nonempty");
        Ok(self
            .incident(pivot)
            .iter()
            .filter(|&&id| {
                let e = &self.edges[id];
                t.vertices().iter().all(|v| e[v.class] == v.index)
            })
            .count())
    }

    /// δ_l: minimum degree over all legal l-sets, for 1 ≤ l ≤ k−1.
    pub fn min_l_degree(&self, l: usize) -> Result<usize> {
        let k = self.k();
        if l == 0 || l >= k {
            return Err(Error::LevelOutOfRange { l, max: k - 1 });
        }
        let mut best: Option<usize> = None;
        for classes in (0..k).combinations(l) {
            if let Some(d) = self.min_degree_over(&classes) {
                best = Some(best.map_or(d, |b| b.min(d)));
            }
        }
        Ok(best.unwrap_or(0))
    }

    /// δ_L: minimum degree over L-tuples, i.e. sets with exactly one vertex in
    /// each class listed in `classes`.
    pub fn min_degree_for_classes(&self, classes: &[usize]) -> Result<usize> {
        let mut sorted = classes.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != classes.len() {
            return Err(Error::InvalidParameter(format!(
                "repeated class in {classes:?}"
            )));
        }
        if sorted.is_empty() || sorted.len() >= self.k() {
            return Err(Error::LevelOutOfRange {
                l: sorted.len(),
                max: self.k() - 1,
            });
        }
        if let Some(&c) = sorted.iter().find(|&&c| c >= self.k()) {
            return Err(Error::InvalidParameter(format!("class {c} out of range")));
        }
        Ok(self.min_degree_over(&sorted).unwrap_or(0))
    }

    /// Projects every edge onto `classes` and takes the minimum count over
    /// all tuples, zeros included. `None` when some listed class is empty.
    fn min_degree_over(&self, classes: &[usize]) -> Option<usize> {
        let sizes: Vec<usize> = classes.iter().map(|&c| self.class_sizes[c]).collect();
        if sizes.contains(&0) {
            return None;
        }
        let total: usize = sizes.iter().product();
        let mut counts = vec![0usize; total];
        for e in &self.edges {
            let mut idx = 0;
            for (&c, &s) in classes.iter().zip(&sizes) {
                idx = idx * s + e[c];
            }
            counts[idx] += 1;
        }
        counts.into_iter().min()
    }

    /// Sub-hypergraph induced on the listed local indices of each class.
    ///
    /// New local index `j` of class `c` corresponds to old index `keep[c][j]`,
    /// so callers control the relabeling through the order of `keep`.
    pub fn induced(&self, keep: &[Vec<usize>]) -> Result<KPartiteHypergraph> {
        if keep.len() != self.k() {
            return Err(Error::ClassCount {
                expected: self.k(),
                got: keep.len(),
            });
        }
        let mut relabel: Vec<Vec<Option<usize>>> =
            self.class_sizes.iter().map(|&n| vec![None; n]).collect();
        for (c, list) in keep.iter().enumerate() {
            for (j, &old) in list.iter().enumerate() {
                self.check_vertex(VertexRef::new(c, old))?;
                if relabel[c][old].replace(j).is_some() {
                    return Err(Error::InvalidParameter(format!(
                        "vertex ({c}, {old}) listed twice"
                    )));
                }
            }
        }
        // Scan edges through the smallest kept class.
        let (pivot, _) = keep
            .iter()
            .enumerate()
            .min_by_key(|(_, l)| l.len())
            .expect("k >= 2");
        let mut edges = Vec::new();
        for &old in &keep[pivot] {
            for &id in &self.incidence[pivot][old] {
                let e = &self.edges[id];
                let mapped: Option<Edge> = e
                    .iter()
                    .enumerate()
                    .map(|(c, &i)| relabel[c][i])
                    .collect();
                if let Some(m) = mapped {
                    edges.push(m);
                }
            }
        }
        let sizes: Vec<usize> = keep.iter().map(Vec::len).collect();
        KPartiteHypergraph::new(self.k(), &sizes, edges)
    }

    /// Same classes, only the edges satisfying `keep`.
    pub fn filter_edges(&self, mut keep: impl FnMut(&[usize]) -> bool) -> KPartiteHypergraph {
        let edges = self.edges.iter().filter(|e| keep(e)).cloned().collect();
        Self::from_sorted(self.class_sizes.clone(), edges)
    }

    /// Hypergraph with the listed vertices deleted. Surviving vertices keep
    /// their relative order within each class.
    pub fn without_vertices(&self, removed: &[VertexRef]) -> Result<KPartiteHypergraph> {
        for &v in removed {
            self.check_vertex(v)?;
        }
        let keep: Vec<Vec<usize>> = self
            .class_sizes
            .iter()
            .enumerate()
            .map(|(c, &n)| {
                (0..n)
                    .filter(|&i| !removed.contains(&VertexRef::new(c, i)))
                    .collect()
            })
            .collect();
        self.induced(&keep)
    }
}

/// Every k-tuple of the product of `sizes`, in lexicographic order.
pub fn all_tuples(sizes: &[usize]) -> impl Iterator<Item = Edge> + '_ {
    let total: usize = if sizes.is_empty() {
        0
    } else {
        sizes.iter().product()
    };
    (0..total).map(move |mut x| {
        let mut e = Edge::from_elem(0, sizes.len());
        for c in (0..sizes.len()).rev() {
            e[c] = x % sizes[c];
            x /= sizes[c];
        }
        e
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counterexample() -> KPartiteHypergraph {
        KPartiteHypergraph::new(3, &[2, 2, 2], [[0, 0, 0], [0, 1, 1], [1, 1, 0], [1, 0, 1]]).unwrap()
    }

    #[test]
    fn complete_222_has_eight_edges() {
        let h = KPartiteHypergraph::new(3, &[2, 2, 2], all_tuples(&[2, 2, 2])).unwrap();
        assert_eq!(h.edge_count(), 8);
        assert_eq!(h, KPartiteHypergraph::complete(3, 2).unwrap());
    }

    #[test]
    fn duplicates_collapse() {
        let h = KPartiteHypergraph::new(3, &[2, 2, 2], [[0, 0, 0], [0, 0, 0]]).unwrap();
        assert_eq!(h.edge_count(), 1);
    }

    #[test]
    fn counterexample_has_four_edges() {
        assert_eq!(counterexample().edge_count(), 4);
    }

    #[test]
    fn rejects_out_of_range_and_arity() {
        let err = KPartiteHypergraph::new(3, &[2, 2, 2], [[0, 2, 0]]).unwrap_err();
        assert_eq!(
            err,
            Error::IndexOutOfRange {
                edge: vec![0, 2, 0],
                class: 1,
                index: 2,
                size: 2
            }
        );
        let err = KPartiteHypergraph::new(3, &[2, 2, 2], [vec![0, 1]]).unwrap_err();
        assert!(matches!(err, Error::EdgeArity { got: 2, .. }));
        assert!(matches!(
            KPartiteHypergraph::new(1, &[2], [[0]]),
            Err(Error::InvalidUniformity(1))
        ));
    }

    #[test]
    fn degree_examples() {
        let h = counterexample();
        let u1 = LegalSet::new([VertexRef::new(0, 0)]).unwrap();
        assert_eq!(h.degree(&u1).unwrap(), 2);
        assert_eq!(h.min_l_degree(1).unwrap(), 2);

        let k = KPartiteHypergraph::complete(3, 4).unwrap();
        let v = LegalSet::new([VertexRef::new(2, 3)]).unwrap();
        assert_eq!(k.degree(&v).unwrap(), 16);
        assert_eq!(k.min_l_degree(1).unwrap(), 16);
        assert_eq!(k.min_l_degree(2).unwrap(), 4);
    }

    #[test]
    fn non_legal_sets_are_rejected() {
        let err = LegalSet::new([VertexRef::new(1, 0), VertexRef::new(1, 1)]).unwrap_err();
        assert_eq!(err, Error::NotLegal(1));
        let h = counterexample();
        assert!(h.min_l_degree(3).is_err());
        assert!(h.min_l_degree(0).is_err());
    }

    #[test]
    fn empty_hypergraph_has_zero_degrees() {
        let h = KPartiteHypergraph::empty(&[3, 3, 3]).unwrap();
        assert_eq!(h.min_l_degree(1).unwrap(), 0);
        assert_eq!(h.min_l_degree(2).unwrap(), 0);
    }

    #[test]
    fn fixed_class_degree() {
        let h = counterexample();
        assert_eq!(h.min_degree_for_classes(&[0, 2]).unwrap(), 1);
        assert!(h.min_degree_for_classes(&[0, 0]).is_err());
    }

    #[test]
    fn membership_matches_edge_list() {
        let h = counterexample();
        for e in all_tuples(&[2, 2, 2]) {
            assert_eq!(h.contains_edge(&e), h.edges().contains(&e));
        }
        assert!(!h.contains_edge(&[0, 0]));
        assert!(!h.contains_edge(&[0, 0, 5]));
    }

    #[test]
    fn induced_relabels_by_keep_order() {
        let h = counterexample();
        let sub = h.induced(&[vec![1], vec![1, 0], vec![0, 1]]).unwrap();
        // old edges through u_2: (1,1,0) and (1,0,1) -> (0,0,0) and (0,1,1)
        assert_eq!(sub.edges(), &[Edge::from_slice(&[0, 0, 0]), Edge::from_slice(&[0, 1, 1])]);
        let without = h.without_vertices(&[VertexRef::new(0, 0)]).unwrap();
        assert_eq!(without.class_sizes(), &[1, 2, 2]);
        assert_eq!(without.edge_count(), 2);
    }

    #[test]
    fn balanced_set_validation() {
        let b = BalancedSet::new(3, [VertexRef::new(0, 1), VertexRef::new(1, 0), VertexRef::new(2, 1)]).unwrap();
        assert_eq!(b.len(), 3);
        assert!(b.contains(VertexRef::new(1, 0)));
        assert!(BalancedSet::new(3, [VertexRef::new(0, 1)]).is_err());
    }
}
