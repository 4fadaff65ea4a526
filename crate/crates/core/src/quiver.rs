//! Quivers, paths and monomial relation sets.
//!
//! Paths compose left to right: the path `[a, b]` traverses `a` first and
//! then `b`, so `target(a) == source(b)`.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::error::QuiverError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ArrowId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

/// A finite quiver. Declaration order of vertices and arrows is preserved and
/// fixes the canonical ordering used everywhere else.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    outgoing: Vec<Vec<ArrowId>>,
    incoming: Vec<Vec<ArrowId>>,
}

impl Quiver {
    pub fn new() -> Self {
        Quiver { vertices: Vec::new(), arrows: Vec::new(), outgoing: Vec::new(), incoming: Vec::new() }
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<VertexId, QuiverError> {
        if self.vertices.iter().any(|v| v == name) {
            return Err(QuiverError::DuplicateVertex(name.to_string()));
        }
        self.vertices.push(name.to_string());
        self.outgoing.push(Vec::new());
        self.incoming.push(Vec::new());
        Ok(VertexId(self.vertices.len() - 1))
    }

    pub fn add_arrow(&mut self, name: &str, source: VertexId, target: VertexId) -> Result<ArrowId, QuiverError> {
        if self.arrows.iter().any(|a| a.name == name) {
            return Err(QuiverError::DuplicateArrow(name.to_string()));
        }
        for v in [source, target] {
            if v.0 >= self.vertices.len() {
                return Err(QuiverError::UnknownVertex(format!("#{}", v.0)));
            }
        }
        let id = ArrowId(self.arrows.len());
        self.arrows.push(Arrow { name: name.to_string(), source, target });
        self.outgoing[source.0].push(id);
        self.incoming[target.0].push(id);
        Ok(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn arrows(&self) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrows.len()).map(ArrowId)
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a.0]
    }

    pub fn source(&self, a: ArrowId) -> VertexId {
        self.arrows[a.0].source
    }

    pub fn target(&self, a: ArrowId) -> VertexId {
        self.arrows[a.0].target
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn arrow_name(&self, a: ArrowId) -> &str {
        &self.arrows[a.0].name
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertices.iter().position(|v| v == name).map(VertexId)
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<ArrowId> {
        self.arrows.iter().position(|a| a.name == name).map(ArrowId)
    }

    pub fn outgoing(&self, v: VertexId) -> &[ArrowId] {
        &self.outgoing[v.0]
    }

    pub fn incoming(&self, v: VertexId) -> &[ArrowId] {
        &self.incoming[v.0]
    }
}

impl Default for Quiver {
    fn default() -> Self {
        Quiver::new()
    }
}

/// A path in a quiver. Trivial paths carry only their vertex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Path {
    pub start: VertexId,
    pub arrows: Vec<ArrowId>,
}

impl Path {
    pub fn trivial(v: VertexId) -> Self {
        Path { start: v, arrows: Vec::new() }
    }

    pub fn from_arrows(q: &Quiver, arrows: Vec<ArrowId>) -> Result<Self, QuiverError> {
        let Some(&first) = arrows.first() else {
            return Err(QuiverError::EmptyPath);
        };
        for w in arrows.windows(2) {
            if q.target(w[0]) != q.source(w[1]) {
                return Err(QuiverError::NotComposable {
                    path: arrows.iter().map(|&a| q.arrow_name(a).to_string()).collect(),
                    position: 1 + arrows.windows(2).position(|x| x == w).unwrap_or(0),
                });
            }
        }
        Ok(Path { start: q.source(first), arrows })
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_trivial()
    }

    pub fn end(&self, q: &Quiver) -> VertexId {
        self.arrows.last().map_or(self.start, |&a| q.target(a))
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e{}", q.vertex_name(self.start))
        } else {
            self.arrows.iter().map(|&a| q.arrow_name(a)).collect::<Vec<_>>().join(" ")
        }
    }
}

/// A quiver together with a minimal set of monomial relations.
#[derive(Clone, Debug)]
pub struct BoundQuiver {
    pub name: String,
    quiver: Quiver,
    relations: Vec<Path>,
    relation_set: HashSet<Vec<ArrowId>>,
    relation_lengths: Vec<usize>,
}

/// Outcome of the finite-dimensionality check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Admissibility {
    /// Finitely many nonzero paths; `longest` is the maximal nonzero path length.
    Finite { longest: usize },
    /// A relation-free oriented cycle (arrow sequence) that can be repeated forever.
    Infinite { witness: Vec<ArrowId> },
}

impl Admissibility {
    pub fn is_finite(&self) -> bool {
        matches!(self, Admissibility::Finite { .. })
    }
}

impl BoundQuiver {
    /// Builds a bound quiver, reducing the relation set so that no relation
    /// contains another one as a subpath. Returns the dropped relations.
    pub fn new(name: &str, quiver: Quiver, relations: Vec<Vec<ArrowId>>) -> Result<(Self, Vec<Path>), QuiverError> {
        let mut paths = Vec::with_capacity(relations.len());
        for r in relations {
            if r.len() < 2 {
                return Err(QuiverError::RelationTooShort(r.iter().map(|&a| quiver.arrow_name(a).to_string()).collect()));
            }
            let p = Path::from_arrows(&quiver, r)?;
            if !paths.contains(&p) {
                paths.push(p);
            }
        }
        let mut kept = Vec::new();
        let mut dropped = Vec::new();
        for (i, p) in paths.iter().enumerate() {
            let redundant =
                paths.iter().enumerate().any(|(j, r)| j != i && r.len() < p.len() && contains_subpath(&p.arrows, &r.arrows));
            if redundant {
                dropped.push(p.clone());
            } else {
                kept.push(p.clone());
            }
        }
        let relation_set = kept.iter().map(|p| p.arrows.clone()).collect();
        let mut relation_lengths: Vec<usize> = kept.iter().map(Path::len).collect();
        relation_lengths.sort_unstable();
        relation_lengths.dedup();
        Ok((BoundQuiver { name: name.to_string(), quiver, relations: kept, relation_set, relation_lengths }, dropped))
    }

    /// Convenience constructor from names, used by fixtures and tests.
    pub fn from_names(
        name: &str,
        vertices: &[&str],
        arrows: &[(&str, &str, &str)],
        relations: &[&[&str]],
    ) -> Result<Self, QuiverError> {
        let mut q = Quiver::new();
        for v in vertices {
            q.add_vertex(v)?;
        }
        for (a, s, t) in arrows {
            let s = q.vertex_by_name(s).ok_or_else(|| QuiverError::UnknownVertex(s.to_string()))?;
            let t = q.vertex_by_name(t).ok_or_else(|| QuiverError::UnknownVertex(t.to_string()))?;
            q.add_arrow(a, s, t)?;
        }
        let mut rels = Vec::new();
        for r in relations {
            let mut path = Vec::new();
            for a in r.iter() {
                path.push(q.arrow_by_name(a).ok_or_else(|| QuiverError::UnknownArrow(a.to_string()))?);
            }
            rels.push(path);
        }
        Ok(BoundQuiver::new(name, q, rels)?.0)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Path] {
        &self.relations
    }

    pub fn is_relation(&self, arrows: &[ArrowId]) -> bool {
        self.relation_set.contains(arrows)
    }

    /// Whether `ab` is one of the length-two relations.
    pub fn is_quadratic_relation(&self, a: ArrowId, b: ArrowId) -> bool {
        self.relation_set.contains(&[a, b][..])
    }

    /// True iff the arrow sequence contains some relation as a contiguous subpath.
    pub fn contains_relation(&self, arrows: &[ArrowId]) -> bool {
        (1..=arrows.len()).any(|end| self.has_relation_suffix(&arrows[..end]))
    }

    /// True iff some relation is a suffix of `arrows`.
    pub fn has_relation_suffix(&self, arrows: &[ArrowId]) -> bool {
        self.relation_lengths.iter().any(|&l| l <= arrows.len() && self.relation_set.contains(&arrows[arrows.len() - l..]))
    }

    pub fn max_relation_len(&self) -> usize {
        self.relation_lengths.last().copied().unwrap_or(0)
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn arrow_count(&self) -> usize {
        self.quiver.arrow_count()
    }

    /// Decides finite dimensionality by searching the graph of relation-free
    /// path suffixes for a cycle.
    pub fn admissibility(&self) -> Admissibility {
        let q = &self.quiver;
        let window = self.max_relation_len().saturating_sub(1).max(1);
        let mut index: HashMap<Vec<ArrowId>, usize> = HashMap::new();
        let mut states: Vec<Vec<ArrowId>> = Vec::new();
        let mut edges: Vec<Vec<(usize, ArrowId)>> = Vec::new();
        let mut queue = Vec::new();
        for a in q.arrows() {
            let s = vec![a];
            index.insert(s.clone(), states.len());
            states.push(s);
            edges.push(Vec::new());
            queue.push(states.len() - 1);
        }
        while let Some(i) = queue.pop() {
            let state = states[i].clone();
            let end = q.target(*state.last().expect("states are nonempty"));
            for &b in q.outgoing(end) {
                let mut next = state.clone();
                next.push(b);
                if self.has_relation_suffix(&next) {
                    continue;
                }
                if next.len() > window {
                    next.remove(0);
                }
                let j = match index.get(&next) {
                    Some(&j) => j,
                    None => {
                        index.insert(next.clone(), states.len());
                        states.push(next);
                        edges.push(Vec::new());
                        queue.push(states.len() - 1);
                        states.len() - 1
                    }
                };
                edges[i].push((j, b));
            }
        }
        // iterative DFS with colors; longest path memoized on the DAG
        let n = states.len();
        let mut color = vec![0u8; n];
        let mut longest = vec![0usize; n];
        let mut parent: Vec<Option<(usize, ArrowId)>> = vec![None; n];
        for root in 0..n {
            if color[root] != 0 {
                continue;
            }
            let mut stack = vec![(root, 0usize)];
            color[root] = 1;
            while let Some(&mut (v, ref mut k)) = stack.last_mut() {
                if *k < edges[v].len() {
                    let (w, b) = edges[v][*k];
                    *k += 1;
                    match color[w] {
                        0 => {
                            color[w] = 1;
                            parent[w] = Some((v, b));
                            stack.push((w, 0));
                        }
                        1 => {
                            // back edge v -> w closes a cycle
                            let mut cycle = vec![b];
                            let mut cur = v;
                            while cur != w {
                                let (p, arrow) = parent[cur].expect("on stack");
                                cycle.push(arrow);
                                cur = p;
                            }
                            cycle.reverse();
                            return Admissibility::Infinite { witness: cycle };
                        }
                        _ => {}
                    }
                } else {
                    color[v] = 2;
                    longest[v] = edges[v].iter().map(|&(w, _)| longest[w] + 1).max().unwrap_or(0);
                    stack.pop();
                }
            }
        }
        let longest = (0..q.arrow_count()).map(|i| longest[i] + 1).max().unwrap_or(0);
        Admissibility::Finite { longest }
    }

    pub fn require_admissible(&self) -> Result<(), QuiverError> {
        match self.admissibility() {
            Admissibility::Finite { .. } => Ok(()),
            Admissibility::Infinite { witness } => {
                Err(QuiverError::NotAdmissible(witness.iter().map(|&a| self.quiver.arrow_name(a).to_string()).collect()))
            }
        }
    }

    /// All relation-free paths, trivial ones first, then by start vertex and
    /// depth-first order. Their number is the dimension of the algebra.
    pub fn nonzero_paths(&self) -> Result<Vec<Path>, QuiverError> {
        self.require_admissible()?;
        let mut out: Vec<Path> = self.quiver.vertices().map(Path::trivial).collect();
        for v in self.quiver.vertices() {
            let mut stack: Vec<Vec<ArrowId>> = self.quiver.outgoing(v).iter().rev().map(|&a| vec![a]).collect();
            while let Some(p) = stack.pop() {
                let end = self.quiver.target(*p.last().unwrap());
                for &b in self.quiver.outgoing(end).iter().rev() {
                    let mut next = p.clone();
                    next.push(b);
                    if !self.has_relation_suffix(&next) {
                        stack.push(next);
                    }
                }
                out.push(Path { start: v, arrows: p });
            }
        }
        Ok(out)
    }

    pub fn dimension(&self) -> Result<usize, QuiverError> {
        Ok(self.nonzero_paths()?.len())
    }

    /// Maximal relation-free path starting with arrow `first`, given that the
    /// algebra is a string algebra (so the continuation is unique).
    pub fn maximal_path_from_arrow(&self, first: ArrowId) -> Vec<ArrowId> {
        let mut path = vec![first];
        loop {
            let end = self.quiver.target(*path.last().unwrap());
            let next = self.quiver.outgoing(end).iter().copied().find(|&b| {
                let mut p = path.clone();
                p.push(b);
                !self.has_relation_suffix(&p)
            });
            match next {
                Some(b) if path.len() <= self.quiver.arrow_count() * (self.max_relation_len() + 1) + 1 => path.push(b),
                _ => return path,
            }
        }
    }

    /// Maximal relation-free path ending with arrow `last`, listed in path order.
    pub fn maximal_path_into_arrow(&self, last: ArrowId) -> Vec<ArrowId> {
        let mut rev = vec![last];
        loop {
            let start = self.quiver.source(*rev.last().unwrap());
            let prev = self.quiver.incoming(start).iter().copied().find(|&a| {
                let mut p: Vec<ArrowId> = rev.iter().rev().copied().collect();
                p.insert(0, a);
                !self.has_relation_prefix(&p)
            });
            match prev {
                Some(a) if rev.len() <= self.quiver.arrow_count() * (self.max_relation_len() + 1) + 1 => rev.push(a),
                _ => break,
            }
        }
        rev.reverse();
        rev
    }

    /// True iff some relation is a prefix of `arrows`.
    pub fn has_relation_prefix(&self, arrows: &[ArrowId]) -> bool {
        self.relation_lengths.iter().any(|&l| l <= arrows.len() && self.relation_set.contains(&arrows[..l]))
    }

    pub fn display_arrows(&self, arrows: &[ArrowId]) -> String {
        arrows.iter().map(|&a| self.quiver.arrow_name(a)).collect::<Vec<_>>().join(" ")
    }
}

impl fmt::Display for BoundQuiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({} vertices, {} arrows, {} relations)",
            self.name,
            self.quiver.vertex_count(),
            self.quiver.arrow_count(),
            self.relations.len()
        )
    }
}

pub(crate) fn contains_subpath(haystack: &[ArrowId], needle: &[ArrowId]) -> bool {
    needle.len() <= haystack.len() && haystack.windows(needle.len()).any(|w| w == needle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn a3c_is_admissible_with_longest_one() {
        assert_eq!(fixtures::a3c().admissibility(), Admissibility::Finite { longest: 1 });
    }

    #[test]
    fn lin3_longest_path_is_two() {
        assert_eq!(fixtures::lin3().admissibility(), Admissibility::Finite { longest: 2 });
    }

    #[test]
    fn unbounded_loop_is_not_admissible() {
        let bq = BoundQuiver::from_names("free-loop", &["1"], &[("a", "1", "1")], &[]).unwrap();
        let a = bq.quiver().arrow_by_name("a").unwrap();
        assert_eq!(bq.admissibility(), Admissibility::Infinite { witness: vec![a] });
        assert!(bq.nonzero_paths().is_err());
    }

    #[test]
    fn dimensions_of_small_fixtures() {
        assert_eq!(fixtures::a3c().dimension().unwrap(), 6);
        assert_eq!(fixtures::lin3().dimension().unwrap(), 6);
        let lp = fixtures::loop1();
        let paths = lp.nonzero_paths().unwrap();
        assert_eq!(paths.len(), 2);
        assert!(paths[0].is_trivial());
        assert_eq!(paths[1].display(lp.quiver()), "d");
    }

    #[test]
    fn d6_dimension_matches_brute_force() {
        // brute force: all arrow words up to length 6, keep composable relation-free ones
        let bq = fixtures::d6();
        let q = bq.quiver();
        let arrows: Vec<ArrowId> = q.arrows().collect();
        let mut count = q.vertex_count();
        let mut frontier: Vec<Vec<ArrowId>> = arrows.iter().map(|&a| vec![a]).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in frontier {
                let composable = p.windows(2).all(|w| q.target(w[0]) == q.source(w[1]));
                let zero = bq.relations().iter().any(|r| contains_subpath(&p, &r.arrows));
                if composable && !zero {
                    count += 1;
                    for &a in &arrows {
                        let mut np = p.clone();
                        np.push(a);
                        next.push(np);
                    }
                }
            }
            frontier = next;
        }
        assert_eq!(count, 17);
        assert_eq!(bq.dimension().unwrap(), 17);
    }

    #[test]
    fn redundant_relations_are_dropped() {
        let mut q = Quiver::new();
        let v: Vec<_> = ["1", "2", "3", "4"].iter().map(|n| q.add_vertex(n).unwrap()).collect();
        let a = q.add_arrow("a", v[0], v[1]).unwrap();
        let b = q.add_arrow("b", v[1], v[2]).unwrap();
        let c = q.add_arrow("c", v[2], v[3]).unwrap();
        let (bq, dropped) = BoundQuiver::new("r", q, vec![vec![a, b], vec![a, b, c]]).unwrap();
        assert_eq!(bq.relations().len(), 1);
        assert_eq!(dropped.len(), 1);
    }

    #[test]
    fn non_composable_relation_is_rejected() {
        let err =
            BoundQuiver::from_names("bad", &["1", "2", "3"], &[("a", "1", "2"), ("c", "3", "1")], &[&["a", "c"]]).unwrap_err();
        assert!(matches!(err, QuiverError::NotComposable { .. }));
    }

    #[test]
    fn maximal_paths_in_d6() {
        let bq = fixtures::d6();
        let q = bq.quiver();
        let g = q.arrow_by_name("gamma").unwrap();
        assert_eq!(bq.display_arrows(&bq.maximal_path_from_arrow(g)), "gamma delta epsilon");
        let e = q.arrow_by_name("epsilon").unwrap();
        assert_eq!(bq.display_arrows(&bq.maximal_path_into_arrow(e)), "gamma delta epsilon");
        let al = q.arrow_by_name("alpha").unwrap();
        assert_eq!(bq.display_arrows(&bq.maximal_path_into_arrow(al)), "alpha");
    }
}
