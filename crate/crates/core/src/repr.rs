//! Exact linear-algebra oracle over bound quiver representations: Hom spaces,
//! projective covers, syzygies, the Nakayama functor, the Auslander-Reiten
//! translate, Ext groups and homological dimensions.
//!
//! An arrow `a: x -> y` acts by a `dim(y) x dim(x)` matrix. The path `a b`
//! therefore acts by `M_b * M_a`.

use std::collections::HashMap;
use std::sync::Mutex;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::OracleError;
use crate::field::Scalar;
use crate::linalg::Matrix;
use crate::quiver::{ArrowId, BoundQuiver, Quiver, VertexId};
use crate::strings::{Entry, ModuleSum, StringAlgebra, StringWord};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation<F> {
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix<F>>,
}

impl<F: Scalar> Representation<F> {
    pub fn zero(q: &Quiver) -> Self {
        Representation { dims: vec![0; q.vertex_count()], maps: q.arrows().map(|_| Matrix::zeros(0, 0)).collect() }
    }

    pub fn dimension(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dimension() == 0
    }

    /// Matrix of a path, composed left to right.
    pub fn path_matrix(&self, _q: &Quiver, start: VertexId, path: &[ArrowId]) -> Matrix<F> {
        let mut m = Matrix::identity(self.dims[start.0]);
        for &a in path {
            m = self.maps[a.0].mul(&m);
        }
        m
    }

    pub fn check_relations(&self, bq: &BoundQuiver) -> Result<(), OracleError> {
        let q = bq.quiver();
        for a in q.arrows() {
            let m = &self.maps[a.0];
            if m.rows() != self.dims[q.target(a).0] || m.cols() != self.dims[q.source(a).0] {
                return Err(OracleError::RelationViolated(format!("matrix of {} has the wrong shape", q.arrow_name(a))));
            }
        }
        for r in bq.relations() {
            if !self.path_matrix(q, r.start, &r.arrows).is_zero() {
                return Err(OracleError::RelationViolated(r.display(q)));
            }
        }
        Ok(())
    }

    pub fn direct_sum(q: &Quiver, parts: &[Representation<F>]) -> Self {
        let dims: Vec<usize> = (0..q.vertex_count()).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
        let maps = q
            .arrows()
            .map(|a| {
                let (s, t) = (q.source(a).0, q.target(a).0);
                let mut m = Matrix::zeros(dims[t], dims[s]);
                let (mut r0, mut c0) = (0, 0);
                for p in parts {
                    let pm = &p.maps[a.0];
                    for i in 0..pm.rows() {
                        for j in 0..pm.cols() {
                            m.set(r0 + i, c0 + j, pm.get(i, j).clone());
                        }
                    }
                    r0 += p.dims[t];
                    c0 += p.dims[s];
                }
                m
            })
            .collect();
        Representation { dims, maps }
    }

    /// Dimension of the top at each vertex.
    pub fn top_dims(&self, q: &Quiver) -> Vec<usize> {
        q.vertices().map(|v| self.dims[v.0] - self.radical_basis(q, v).cols()).collect()
    }

    /// Dimension of the socle at each vertex.
    pub fn socle_dims(&self, q: &Quiver) -> Vec<usize> {
        q.vertices()
            .map(|v| {
                let d = self.dims[v.0];
                let out = q.outgoing(v);
                if out.is_empty() || d == 0 {
                    return d;
                }
                let mut stacked = Matrix::zeros(0, d);
                for &a in out {
                    stacked = stacked.transpose().hstack(&self.maps[a.0].transpose()).transpose();
                }
                stacked.kernel().cols()
            })
            .collect()
    }

    fn radical_basis(&self, q: &Quiver, v: VertexId) -> Matrix<F> {
        let mut span = Matrix::zeros(self.dims[v.0], 0);
        for &a in q.incoming(v) {
            span = span.hstack(&self.maps[a.0]);
        }
        span.column_basis()
    }

    pub fn to_json(&self, q: &Quiver, field: &str) -> RepresentationJson {
        RepresentationJson {
            field: field.to_string(),
            dims: q.vertices().map(|v| (q.vertex_name(v).to_string(), self.dims[v.0])).collect(),
            maps: q
                .arrows()
                .map(|a| ArrowMatrixJson {
                    arrow: q.arrow_name(a).to_string(),
                    rows: (0..self.maps[a.0].rows())
                        .map(|i| (0..self.maps[a.0].cols()).map(|j| self.maps[a.0].get(i, j).to_string()).collect())
                        .collect(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RepresentationJson {
    pub field: String,
    pub dims: Vec<(String, usize)>,
    pub maps: Vec<ArrowMatrixJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ArrowMatrixJson {
    pub arrow: String,
    pub rows: Vec<Vec<String>>,
}

/// A morphism given by one matrix per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism<F> {
    pub maps: Vec<Matrix<F>>,
}

impl<F: Scalar> Morphism<F> {
    /// `self` after `first`.
    pub fn compose(&self, first: &Morphism<F>) -> Morphism<F> {
        Morphism { maps: self.maps.iter().zip(&first.maps).map(|(g, f)| g.mul(f)).collect() }
    }

    pub fn is_iso(&self) -> bool {
        self.maps.iter().all(|m| m.is_invertible())
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Matrix::is_zero)
    }

    pub fn commutes(&self, q: &Quiver, from: &Representation<F>, to: &Representation<F>) -> bool {
        q.arrows().all(|a| {
            let (s, t) = (q.source(a).0, q.target(a).0);
            to.maps[a.0].mul(&self.maps[s]) == self.maps[t].mul(&from.maps[a.0])
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IsoVerdict {
    Iso,
    /// No isomorphism found by random combinations or the deterministic scan.
    ProbablyNonIso,
    /// Dimension vectors or Hom spaces rule out an isomorphism.
    ProvenNonIso,
}

/// Projective dimension style result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Dimension {
    Finite(usize),
    /// Syzygies revisit a module; `cycle` lists the modules on the cycle.
    Infinite {
        period: usize,
        cycle: Vec<String>,
    },
    Unresolved {
        cutoff: usize,
    },
}

impl Dimension {
    pub fn finite(&self) -> Option<usize> {
        match self {
            Dimension::Finite(n) => Some(*n),
            _ => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Dimension::Infinite { .. })
    }

    fn max(self, other: Dimension) -> Dimension {
        match (self, other) {
            (d @ Dimension::Infinite { .. }, _) | (_, d @ Dimension::Infinite { .. }) => d,
            (d @ Dimension::Unresolved { .. }, _) | (_, d @ Dimension::Unresolved { .. }) => d,
            (Dimension::Finite(a), Dimension::Finite(b)) => Dimension::Finite(a.max(b)),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Dimension::Finite(n) => n.to_string(),
            Dimension::Infinite { period, .. } => format!("infinite (period {period})"),
            Dimension::Unresolved { cutoff } => format!("unresolved at cutoff {cutoff}"),
        }
    }
}

/// A projective cover `P -> M` given by its generators.
#[derive(Clone, Debug)]
pub struct Cover<F> {
    /// Generator vertices and the generator vectors in `M`.
    pub generators: Vec<(VertexId, Vec<F>)>,
    pub projective: Representation<F>,
    pub map: Morphism<F>,
}

struct PathIndex {
    /// Per vertex, the paths (arrow lists) forming the local basis.
    basis: Vec<Vec<Vec<ArrowId>>>,
    index: HashMap<Vec<ArrowId>, usize>,
}

/// The oracle for one bound quiver over the scalar type `F`.
pub struct Oracle<F> {
    bq: BoundQuiver,
    strings: Option<StringAlgebra>,
    proj: Vec<Representation<F>>,
    proj_paths: Vec<PathIndex>,
    inj: Vec<Representation<F>>,
    inj_paths: Vec<PathIndex>,
    pub trials: usize,
    pub seed: u64,
    syzygy_cache: Mutex<HashMap<StringWord, ModuleSum>>,
}

impl<F: Scalar> Oracle<F> {
    pub fn new(bq: BoundQuiver) -> Result<Self, OracleError> {
        let paths = bq.nonzero_paths()?;
        let q = bq.quiver();
        let n = q.vertex_count();
        let mut proj = Vec::with_capacity(n);
        let mut proj_paths = Vec::with_capacity(n);
        let mut inj = Vec::with_capacity(n);
        let mut inj_paths = Vec::with_capacity(n);
        for x in q.vertices() {
            // P(x): paths from x, placed at their end vertex
            let mut basis = vec![Vec::new(); n];
            let mut index = HashMap::new();
            for p in paths.iter().filter(|p| p.start == x) {
                let e = p.end(q).0;
                index.insert(p.arrows.clone(), basis[e].len());
                basis[e].push(p.arrows.clone());
            }
            let dims: Vec<usize> = basis.iter().map(Vec::len).collect();
            let maps = q
                .arrows()
                .map(|a| {
                    let (s, t) = (q.source(a).0, q.target(a).0);
                    let mut m = Matrix::zeros(dims[t], dims[s]);
                    for (j, p) in basis[s].iter().enumerate() {
                        let mut ext = p.clone();
                        ext.push(a);
                        if let Some(&i) = index.get(&ext) {
                            m.set(i, j, F::one());
                        }
                    }
                    m
                })
                .collect();
            proj.push(Representation { dims, maps });
            proj_paths.push(PathIndex { basis, index });

            // I(x): paths ending at x, placed at their start vertex
            let mut basis = vec![Vec::new(); n];
            let mut index = HashMap::new();
            for p in paths.iter().filter(|p| p.end(q) == x) {
                let s = p.start.0;
                index.insert(p.arrows.clone(), basis[s].len());
                basis[s].push(p.arrows.clone());
            }
            let dims: Vec<usize> = basis.iter().map(Vec::len).collect();
            let maps = q
                .arrows()
                .map(|a| {
                    let (s, t) = (q.source(a).0, q.target(a).0);
                    let mut m = Matrix::zeros(dims[t], dims[s]);
                    for (j, p) in basis[s].iter().enumerate() {
                        if p.first() == Some(&a) {
                            let i = index[&p[1..].to_vec()];
                            m.set(i, j, F::one());
                        }
                    }
                    m
                })
                .collect();
            inj.push(Representation { dims, maps });
            inj_paths.push(PathIndex { basis, index });
        }
        let strings = StringAlgebra::new(bq.clone()).ok();
        Ok(Oracle { bq, strings, proj, proj_paths, inj, inj_paths, trials: 8, seed: 0, syzygy_cache: Mutex::new(HashMap::new()) })
    }

    pub fn with_trials(mut self, trials: usize, seed: u64) -> Self {
        self.trials = trials;
        self.seed = seed;
        self
    }

    pub fn bound_quiver(&self) -> &BoundQuiver {
        &self.bq
    }

    pub fn quiver(&self) -> &Quiver {
        self.bq.quiver()
    }

    pub fn string_algebra(&self) -> Option<&StringAlgebra> {
        self.strings.as_ref()
    }

    pub fn projective_rep(&self, x: VertexId) -> &Representation<F> {
        &self.proj[x.0]
    }

    pub fn injective_rep(&self, x: VertexId) -> &Representation<F> {
        &self.inj[x.0]
    }

    pub fn simple_rep(&self, x: VertexId) -> Representation<F> {
        self.rep_of_string(&StringWord::trivial(x))
    }

    /// Dimension of the regular representation.
    pub fn regular_dimension(&self) -> usize {
        self.proj.iter().map(Representation::dimension).sum()
    }

    /// The string module of `word`: one basis vector per walk position.
    pub fn rep_of_string(&self, word: &StringWord) -> Representation<F> {
        let q = self.quiver();
        let verts = word.vertices(q);
        let mut dims = vec![0; q.vertex_count()];
        let local: Vec<usize> = verts
            .iter()
            .map(|v| {
                dims[v.0] += 1;
                dims[v.0] - 1
            })
            .collect();
        let mut maps: Vec<Matrix<F>> = q.arrows().map(|a| Matrix::zeros(dims[q.target(a).0], dims[q.source(a).0])).collect();
        for (k, l) in word.letters.iter().enumerate() {
            let (from, to) = if l.inverse { (k + 1, k) } else { (k, k + 1) };
            maps[l.arrow.0].set(local[to], local[from], F::one());
        }
        let rep = Representation { dims, maps };
        debug_assert!(rep.check_relations(&self.bq).is_ok(), "string representation violates a relation");
        rep
    }

    pub fn rep_of_sum(&self, sum: &ModuleSum) -> Representation<F> {
        let parts: Vec<Representation<F>> = sum.words().map(|w| self.rep_of_string(w)).collect();
        Representation::direct_sum(self.quiver(), &parts)
    }

    pub fn hom_basis(&self, m: &Representation<F>, n: &Representation<F>) -> Vec<Morphism<F>> {
        let q = self.quiver();
        let nv = q.vertex_count();
        let mut offset = vec![0; nv + 1];
        for v in 0..nv {
            offset[v + 1] = offset[v] + n.dims[v] * m.dims[v];
        }
        let vars = offset[nv];
        if vars == 0 {
            return Vec::new();
        }
        let var = |v: usize, r: usize, c: usize| offset[v] + r * m.dims[v] + c;
        let mut rows: Vec<Vec<F>> = Vec::new();
        for a in q.arrows() {
            let (x, y) = (q.source(a).0, q.target(a).0);
            let (na, ma) = (&n.maps[a.0], &m.maps[a.0]);
            for r in 0..n.dims[y] {
                for c in 0..m.dims[x] {
                    let mut row = vec![F::zero(); vars];
                    for k in 0..n.dims[x] {
                        let coef = na.get(r, k);
                        if !coef.is_zero() {
                            let i = var(x, k, c);
                            row[i] = row[i].add(coef);
                        }
                    }
                    for k in 0..m.dims[y] {
                        let coef = ma.get(k, c);
                        if !coef.is_zero() {
                            let i = var(y, r, k);
                            row[i] = row[i].sub(coef);
                        }
                    }
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        let system = if rows.is_empty() { Matrix::zeros(0, vars) } else { Matrix::from_rows(rows) };
        let kernel = system.kernel();
        (0..kernel.cols())
            .map(|k| Morphism {
                maps: (0..nv)
                    .map(|v| {
                        let mut mv = Matrix::zeros(n.dims[v], m.dims[v]);
                        for r in 0..n.dims[v] {
                            for c in 0..m.dims[v] {
                                mv.set(r, c, kernel.get(var(v, r, c), k).clone());
                            }
                        }
                        mv
                    })
                    .collect(),
            })
            .collect()
    }

    pub fn hom_dim(&self, m: &Representation<F>, n: &Representation<F>) -> usize {
        self.hom_basis(m, n).len()
    }

    /// `dim Hom(M, Λ)`.
    pub fn hom_to_regular(&self, m: &Representation<F>) -> usize {
        self.proj.iter().map(|p| self.hom_dim(m, p)).sum()
    }

    /// Randomized isomorphism test with a deterministic fallback scan.
    pub fn is_iso_rep(&self, m: &Representation<F>, n: &Representation<F>) -> IsoVerdict {
        if m.dims != n.dims {
            return IsoVerdict::ProvenNonIso;
        }
        if m.is_zero() {
            return IsoVerdict::Iso;
        }
        let basis = self.hom_basis(m, n);
        if basis.is_empty() {
            return IsoVerdict::ProvenNonIso;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        for _ in 0..self.trials {
            let coeffs: Vec<F> = basis.iter().map(|_| F::random(&mut rng)).collect();
            if combine(&basis, &coeffs).is_iso() {
                return IsoVerdict::Iso;
            }
        }
        for (i, f) in basis.iter().enumerate() {
            if f.is_iso() {
                return IsoVerdict::Iso;
            }
            for g in &basis[i + 1..] {
                if combine(&[f.clone(), g.clone()], &[F::one(), F::one()]).is_iso() {
                    return IsoVerdict::Iso;
                }
            }
        }
        IsoVerdict::ProbablyNonIso
    }

    /// Minimal projective cover through a complement of the radical.
    pub fn cover(&self, m: &Representation<F>) -> Cover<F> {
        let q = self.quiver();
        let mut generators = Vec::new();
        for v in q.vertices() {
            let rad = m.radical_basis(q, v);
            for i in rad.complement_indices() {
                let mut e = vec![F::zero(); m.dims[v.0]];
                e[i] = F::one();
                generators.push((v, e));
            }
        }
        let parts: Vec<Representation<F>> = generators.iter().map(|(x, _)| self.proj[x.0].clone()).collect();
        let projective = Representation::direct_sum(q, &parts);
        let maps = q
            .vertices()
            .map(|w| {
                let mut cols = Vec::new();
                for (x, g) in &generators {
                    for p in &self.proj_paths[x.0].basis[w.0] {
                        cols.push(m.path_matrix(q, *x, p).mul_vec(g));
                    }
                }
                Matrix::from_columns(m.dims[w.0], &cols)
            })
            .collect();
        Cover { generators, projective, map: Morphism { maps } }
    }

    /// Kernel of `f: A -> B` as a representation with its inclusion into `A`.
    pub fn kernel(&self, a: &Representation<F>, f: &Morphism<F>) -> (Representation<F>, Morphism<F>) {
        let q = self.quiver();
        let incl: Vec<Matrix<F>> = q
            .vertices()
            .map(|v| {
                let fv = &f.maps[v.0];
                if fv.rows() == 0 {
                    Matrix::identity(a.dims[v.0])
                } else {
                    fv.kernel()
                }
            })
            .collect();
        let dims: Vec<usize> = incl.iter().map(Matrix::cols).collect();
        let maps = q
            .arrows()
            .map(|arr| {
                let (s, t) = (q.source(arr).0, q.target(arr).0);
                let image = a.maps[arr.0].mul(&incl[s]);
                incl[t].solve(&image).expect("kernel is a subrepresentation")
            })
            .collect();
        (Representation { dims, maps }, Morphism { maps: incl })
    }

    /// Cokernel of `f: A -> B`.
    pub fn cokernel(&self, b: &Representation<F>, f: &Morphism<F>) -> Representation<F> {
        let q = self.quiver();
        // per vertex: basis change [image | complement] and projection onto the complement
        let proj: Vec<Matrix<F>> = q
            .vertices()
            .map(|v| {
                let d = b.dims[v.0];
                let im = if f.maps[v.0].cols() == 0 { Matrix::zeros(d, 0) } else { f.maps[v.0].column_basis() };
                let comp = im.complement_indices();
                let full = im.hstack(&Matrix::identity(d).select_columns(&comp));
                let inv = full.inverse().expect("basis change is invertible");
                let mut p = Matrix::zeros(comp.len(), d);
                for i in 0..comp.len() {
                    for j in 0..d {
                        p.set(i, j, inv.get(im.cols() + i, j).clone());
                    }
                }
                p
            })
            .collect();
        let dims: Vec<usize> = proj.iter().map(Matrix::rows).collect();
        let maps = q
            .arrows()
            .map(|arr| {
                let (s, t) = (q.source(arr).0, q.target(arr).0);
                // lift basis of the quotient at s to B_s through the complement columns
                let d = b.dims[s];
                let im = if f.maps[s].cols() == 0 { Matrix::zeros(d, 0) } else { f.maps[s].column_basis() };
                let comp = im.complement_indices();
                let lift = Matrix::identity(d).select_columns(&comp);
                proj[t].mul(&b.maps[arr.0]).mul(&lift)
            })
            .collect();
        Representation { dims, maps }
    }

    pub fn syzygy(&self, m: &Representation<F>) -> Representation<F> {
        let c = self.cover(m);
        self.kernel(&c.projective, &c.map).0
    }

    pub fn cover_and_syzygy(&self, m: &Representation<F>) -> (Cover<F>, Representation<F>) {
        let c = self.cover(m);
        let k = self.kernel(&c.projective, &c.map).0;
        (c, k)
    }

    pub fn is_projective(&self, m: &Representation<F>) -> bool {
        self.cover(m).projective.dimension() == m.dimension()
    }

    /// `ν` of a map between sums of indecomposable projectives. The map is
    /// given by the images of the generators of the source, expressed in the
    /// path basis of the target sum.
    fn nakayama_map(
        &self,
        source_gens: &[VertexId],
        target_gens: &[VertexId],
        images: &[Vec<F>],
    ) -> (Representation<F>, Representation<F>, Morphism<F>) {
        let q = self.quiver();
        let src_parts: Vec<Representation<F>> = source_gens.iter().map(|y| self.inj[y.0].clone()).collect();
        let tgt_parts: Vec<Representation<F>> = target_gens.iter().map(|x| self.inj[x.0].clone()).collect();
        let src = Representation::direct_sum(q, &src_parts);
        let tgt = Representation::direct_sum(q, &tgt_parts);
        // coefficient lists: for generator j of the source, (target block i, path p, c)
        let coeffs: Vec<Vec<(usize, &Vec<ArrowId>, F)>> = source_gens
            .iter()
            .zip(images)
            .map(|(y, img)| {
                let mut out = Vec::new();
                let mut pos = 0;
                for (i, x) in target_gens.iter().enumerate() {
                    for p in &self.proj_paths[x.0].basis[y.0] {
                        if !img[pos].is_zero() {
                            out.push((i, p, img[pos].clone()));
                        }
                        pos += 1;
                    }
                }
                out
            })
            .collect();
        let maps = q
            .vertices()
            .map(|w| {
                let mut m: Matrix<F> = Matrix::zeros(tgt.dims[w.0], src.dims[w.0]);
                let mut tgt_offset = vec![0; target_gens.len()];
                let mut acc = 0;
                for (i, x) in target_gens.iter().enumerate() {
                    tgt_offset[i] = acc;
                    acc += self.inj[x.0].dims[w.0];
                }
                let mut col = 0;
                for (j, y) in source_gens.iter().enumerate() {
                    for r in &self.inj_paths[y.0].basis[w.0] {
                        for (i, p, c) in &coeffs[j] {
                            if r.len() >= p.len() && r.ends_with(p) {
                                let s = r[..r.len() - p.len()].to_vec();
                                let row = tgt_offset[*i] + self.inj_paths[target_gens[*i].0].index[&s];
                                let v = m.get(row, col).add(c);
                                m.set(row, col, v);
                            }
                        }
                        col += 1;
                    }
                }
                m
            })
            .collect();
        (src, tgt, Morphism { maps })
    }

    /// Minimal projective presentation `P1 -> P0 -> M` as generator data.
    fn presentation(&self, m: &Representation<F>) -> (Vec<VertexId>, Vec<VertexId>, Vec<Vec<F>>) {
        let c0 = self.cover(m);
        let (k0, incl) = self.kernel(&c0.projective, &c0.map);
        let c1 = self.cover(&k0);
        let p0: Vec<VertexId> = c0.generators.iter().map(|g| g.0).collect();
        let p1: Vec<VertexId> = c1.generators.iter().map(|g| g.0).collect();
        let images = c1.generators.iter().map(|(y, g)| incl.maps[y.0].mul_vec(g)).collect();
        (p1, p0, images)
    }

    /// `ν M = coker(ν P1 -> ν P0)`.
    pub fn nakayama(&self, m: &Representation<F>) -> Representation<F> {
        let (p1, p0, images) = self.presentation(m);
        let (_, tgt, f) = self.nakayama_map(&p1, &p0, &images);
        self.cokernel(&tgt, &f)
    }

    /// `τ M = ker(ν P1 -> ν P0)` for a minimal presentation. `M` should have
    /// no projective summands.
    pub fn tau_rep(&self, m: &Representation<F>) -> Representation<F> {
        let (p1, p0, images) = self.presentation(m);
        let (src, _, f) = self.nakayama_map(&p1, &p0, &images);
        self.kernel(&src, &f).0
    }

    /// Splits `m` into string modules. Never guesses: fails if some summand is
    /// not a string module or the algebra is not a string algebra.
    pub fn decompose(&self, m: &Representation<F>) -> Result<ModuleSum, OracleError> {
        let alg = self
            .strings
            .as_ref()
            .ok_or_else(|| OracleError::DecompositionNotFound(format!("{} is not a string algebra", self.bq.name)))?;
        let q = self.quiver();
        let mut rest = m.clone();
        let mut found: Vec<Entry> = Vec::new();
        while !rest.is_zero() {
            let top = rest.top_dims(q);
            let soc = rest.socle_dims(q);
            let mut candidates = bounded_strings(alg, &rest.dims);
            candidates.retain(|w| {
                let (t, s) = w.top_socle(q);
                fits(&t, &top) && fits(&s, &soc)
            });
            candidates.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
            let mut split = None;
            for w in &candidates {
                let s = self.rep_of_string(w);
                if let Some(complement) = self.split_off(&s, &rest) {
                    split = Some((w.clone(), complement));
                    break;
                }
            }
            let Some((w, complement)) = split else {
                return Err(OracleError::DecompositionNotFound(format!(
                    "no string summand in a module of dimension vector {:?}",
                    rest.dims
                )));
            };
            found.push(alg.entry(&w));
            rest = complement;
        }
        Ok(ModuleSum::new(found))
    }

    /// If `s` (with local endomorphism ring) is a summand of `m`, returns a
    /// complement.
    fn split_off(&self, s: &Representation<F>, m: &Representation<F>) -> Option<Representation<F>> {
        let fs = self.hom_basis(s, m);
        if fs.is_empty() {
            return None;
        }
        let gs = self.hom_basis(m, s);
        for f in &fs {
            for g in &gs {
                let gf = g.compose(f);
                if gf.is_iso() {
                    let inv = Morphism { maps: gf.maps.iter().map(|x| x.inverse().expect("iso")).collect() };
                    let retraction = inv.compose(g);
                    return Some(self.kernel(m, &retraction).0);
                }
            }
        }
        None
    }

    /// Stable syzygy of a string module, computed by linear algebra and
    /// decomposed. Cached per word.
    pub fn string_syzygy(&self, word: &StringWord) -> Result<ModuleSum, OracleError> {
        let key = word.clone();
        if let Some(s) = self.syzygy_cache.lock().expect("cache lock").get(&key) {
            return Ok(s.clone());
        }
        let k = self.syzygy(&self.rep_of_string(word));
        let out = self.decompose(&k)?;
        self.syzygy_cache.lock().expect("cache lock").insert(key, out.clone());
        Ok(out)
    }

    /// `τ` of a string module through the oracle, decomposed.
    pub fn string_tau(&self, word: &StringWord) -> Result<ModuleSum, OracleError> {
        let alg = self.strings.as_ref().ok_or_else(|| OracleError::DecompositionNotFound("not a string algebra".into()))?;
        if alg.projective_vertex(word).is_some() {
            return Ok(ModuleSum::default());
        }
        self.decompose(&self.tau_rep(&self.rep_of_string(word)))
    }

    /// `dim Ext^i(M, Λ)`, from the resolution truncated at `cutoff`.
    pub fn ext_dim(&self, m: &Representation<F>, i: usize, cutoff: usize) -> Result<usize, OracleError> {
        if i == 0 || i > cutoff {
            return Err(OracleError::Unresolved(cutoff));
        }
        let mut n = m.clone();
        for _ in 1..i {
            n = self.syzygy(&n);
        }
        let (c, k) = self.cover_and_syzygy(&n);
        let hom_p0: usize = c.generators.iter().map(|(y, _)| self.inj[y.0].dimension()).sum();
        let hom_k = self.hom_to_regular(&k);
        let hom_n = self.hom_to_regular(&n);
        Ok(hom_k + hom_n - hom_p0)
    }

    /// Projective dimension. For string algebras the syzygies are decomposed
    /// and a revisited summand proves infinite dimension; otherwise whole
    /// syzygies are compared by dimension vector and isomorphism.
    pub fn proj_dim(&self, m: &Representation<F>, cutoff: usize) -> Result<Dimension, OracleError> {
        if self.strings.is_some() {
            let sum = self.decompose(m)?;
            let mut search = PdSearch { memo: HashMap::new(), stack: Vec::new(), cutoff };
            let mut out = Dimension::Finite(0);
            for e in sum.entries() {
                out = out.max(self.pd_visit(&mut search, e)?);
            }
            return Ok(out);
        }
        let mut history: Vec<Representation<F>> = Vec::new();
        let mut cur = m.clone();
        for k in 0..=cutoff {
            if self.is_projective(&cur) {
                return Ok(Dimension::Finite(k));
            }
            for (j, h) in history.iter().enumerate() {
                if h.dims == cur.dims && self.is_iso_rep(h, &cur) == IsoVerdict::Iso {
                    return Ok(Dimension::Infinite {
                        period: k - j,
                        cycle: history[j..].iter().map(|r| format!("{:?}", r.dims)).collect(),
                    });
                }
            }
            history.push(cur.clone());
            cur = self.syzygy(&cur);
        }
        Ok(Dimension::Unresolved { cutoff })
    }

    fn pd_visit(&self, search: &mut PdSearch, e: &Entry) -> Result<Dimension, OracleError> {
        if e.projective.is_some() {
            return Ok(Dimension::Finite(0));
        }
        if let Some(&d) = search.memo.get(&e.word) {
            return Ok(Dimension::Finite(d));
        }
        if let Some(pos) = search.stack.iter().position(|w| *w == e.word) {
            let q = self.quiver();
            let cycle: Vec<String> = search.stack[pos..].iter().map(|w| w.display(q)).collect();
            return Ok(Dimension::Infinite { period: cycle.len(), cycle });
        }
        if search.stack.len() >= search.cutoff {
            return Ok(Dimension::Unresolved { cutoff: search.cutoff });
        }
        search.stack.push(e.word.clone());
        let children = self.string_syzygy(&e.word)?;
        let mut out = Dimension::Finite(1);
        for c in children.entries() {
            let d = match self.pd_visit(search, c)? {
                Dimension::Finite(n) => Dimension::Finite(n + 1),
                other => other,
            };
            out = out.max(d);
            if !matches!(out, Dimension::Finite(_)) {
                break;
            }
        }
        search.stack.pop();
        if let Dimension::Finite(n) = out {
            search.memo.insert(e.word.clone(), n);
        }
        Ok(out)
    }

    /// `max_x pd I(x)`: the Gorenstein dimension when finite.
    pub fn gorenstein_dimension(&self, cutoff: usize) -> Result<Dimension, OracleError> {
        let mut out = Dimension::Finite(0);
        for x in self.quiver().vertices() {
            out = out.max(self.proj_dim(&self.inj[x.0], cutoff)?);
        }
        Ok(out)
    }

    /// `max_x pd S(x)`.
    pub fn global_dimension(&self, cutoff: usize) -> Result<Dimension, OracleError> {
        let mut out = Dimension::Finite(0);
        for x in self.quiver().vertices() {
            out = out.max(self.proj_dim(&self.simple_rep(x), cutoff)?);
        }
        Ok(out)
    }

    /// Default cutoff: twice the dimension of the algebra.
    pub fn default_cutoff(&self) -> usize {
        2 * self.regular_dimension()
    }
}

struct PdSearch {
    memo: HashMap<StringWord, usize>,
    stack: Vec<StringWord>,
    cutoff: usize,
}

fn combine<F: Scalar>(basis: &[Morphism<F>], coeffs: &[F]) -> Morphism<F> {
    let mut maps: Vec<Matrix<F>> = basis[0].maps.iter().map(|m| Matrix::zeros(m.rows(), m.cols())).collect();
    for (f, c) in basis.iter().zip(coeffs) {
        for (acc, m) in maps.iter_mut().zip(&f.maps) {
            *acc = acc.add(&m.scale(c));
        }
    }
    Morphism { maps }
}

fn fits(vertices: &[VertexId], dims: &[usize]) -> bool {
    let mut count = vec![0usize; dims.len()];
    for v in vertices {
        count[v.0] += 1;
    }
    count.iter().zip(dims).all(|(c, d)| c <= d)
}

/// Canonical strings whose dimension vector is bounded by `dims`.
fn bounded_strings(alg: &StringAlgebra, dims: &[usize]) -> Vec<StringWord> {
    let q = alg.quiver();
    let mut out = Vec::new();
    let mut stack: Vec<(StringWord, Vec<usize>)> = Vec::new();
    for v in q.vertices() {
        if dims[v.0] > 0 {
            let mut used = vec![0; dims.len()];
            used[v.0] = 1;
            stack.push((StringWord::trivial(v), used));
        }
    }
    while let Some((w, used)) = stack.pop() {
        for l in alg.extensions(&w) {
            let t = l.to(q);
            if used[t.0] < dims[t.0] {
                let mut u = used.clone();
                u[t.0] += 1;
                let mut letters = w.letters.clone();
                letters.push(l);
                stack.push((StringWord { start: w.start, letters }, u));
            }
        }
        if w.is_canonical(q) {
            out.push(w);
        }
    }
    out
}
