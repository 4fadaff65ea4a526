//! (m+2)-angulations of the disk and the annulus and their bound quivers.
//!
//! Disk points `0..nm+2` are labelled clockwise. The annulus is handled in
//! its universal cover, a strip with `B_p` on top (positions increase to the
//! right, label = position mod mp) and `B_q` below (label = -position mod
//! mq), so both boundaries are read in the same rotational sense. A deck
//! transformation shifts top positions by `mp` and bottom positions by `mq`.
//! Faces of an annulus angulation are found by cutting along one
//! transjective arc, which leaves a polygon with two copies of that arc.

use std::collections::{BTreeSet, HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classify::{classify, saturated_cycles};
use crate::error::SurfaceError;
use crate::field::F10007;
use crate::quiver::{ArrowId, BoundQuiver, Quiver};
use crate::repr::{Dimension, Oracle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Model {
    Disk { n: usize, m: usize },
    Annulus { p: usize, q: usize, m: usize },
}

impl Model {
    pub fn m(&self) -> usize {
        match *self {
            Model::Disk { m, .. } | Model::Annulus { m, .. } => m,
        }
    }

    pub fn validate(&self) -> Result<(), SurfaceError> {
        match *self {
            Model::Disk { n, m } if n >= 2 && m >= 1 => Ok(()),
            Model::Annulus { p, q, m } if p >= 1 && q >= 1 && m >= 1 => Ok(()),
            _ => Err(SurfaceError::InvalidModel(format!("{self:?}"))),
        }
    }

    /// Number of marked points of the disk.
    pub fn disk_points(&self) -> Option<usize> {
        match *self {
            Model::Disk { n, m } => Some(n * m + 2),
            Model::Annulus { .. } => None,
        }
    }
}

/// An arc. Disk diagonals are stored with `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Arc {
    Disk {
        a: usize,
        b: usize,
    },
    /// From label `x` on `B_p` to label `y` on `B_q`, wound `w` times.
    Trans {
        x: usize,
        y: usize,
        w: i64,
    },
    /// From `u` to `u + km + 1` on `B_p`.
    RegP {
        u: usize,
        k: usize,
    },
    /// From `u` to `u + km + 1` on `B_q`.
    RegQ {
        u: usize,
        k: usize,
    },
}

impl Arc {
    pub fn disk(a: usize, b: usize) -> Arc {
        Arc::Disk { a: a.min(b), b: a.max(b) }
    }

    pub fn describe(&self) -> String {
        match *self {
            Arc::Disk { a, b } => format!("diag {a} {b}"),
            Arc::Trans { x, y, w } => format!("trans {x} {y} {w}"),
            Arc::RegP { u, k } => format!("regp {u} {k}"),
            Arc::RegQ { u, k } => format!("regq {u} {k}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Angulation {
    pub model: Model,
    pub arcs: Vec<Arc>,
}

impl Angulation {
    pub fn to_text(&self) -> String {
        let mut out = match self.model {
            Model::Disk { n, m } => format!("disk n={n} m={m}\n"),
            Model::Annulus { p, q, m } => format!("annulus p={p} q={q} m={m}\n"),
        };
        for a in &self.arcs {
            out.push_str(&a.describe());
            out.push('\n');
        }
        out
    }

    /// Arcs in sorted order, for comparing angulations as sets.
    pub fn arc_set(&self) -> BTreeSet<Arc> {
        self.arcs.iter().copied().collect()
    }
}

pub fn parse_angulation(text: &str) -> Result<Angulation, SurfaceError> {
    let mut model = None;
    let mut arcs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: &str| SurfaceError::Syntax { line: i + 1, message: message.to_string() };
        let mut parts = line.split_whitespace();
        let head = parts.next().expect("nonempty line");
        let rest: Vec<&str> = parts.collect();
        if model.is_none() {
            let kv = |key: &str| -> Result<usize, SurfaceError> {
                rest.iter()
                    .find_map(|t| t.strip_prefix(key).and_then(|v| v.strip_prefix('=')))
                    .ok_or_else(|| err(&format!("missing {key}=")))?
                    .parse()
                    .map_err(|_| err(&format!("{key} is not a number")))
            };
            model = Some(match head {
                "disk" => Model::Disk { n: kv("n")?, m: kv("m")? },
                "annulus" => Model::Annulus { p: kv("p")?, q: kv("q")?, m: kv("m")? },
                _ => return Err(err("expected a `disk` or `annulus` header")),
            });
            continue;
        }
        let num = |k: usize| -> Result<i64, SurfaceError> {
            rest.get(k).ok_or_else(|| err("missing field"))?.parse().map_err(|_| err("not an integer"))
        };
        let nat = |k: usize| -> Result<usize, SurfaceError> {
            let v = num(k)?;
            usize::try_from(v).map_err(|_| SurfaceError::OutOfRange(v))
        };
        let arity = match head {
            "trans" => 3,
            _ => 2,
        };
        if rest.len() != arity {
            return Err(err(&format!("`{head}` takes {arity} fields")));
        }
        arcs.push(match head {
            "diag" => Arc::disk(nat(0)?, nat(1)?),
            "trans" => Arc::Trans { x: nat(0)?, y: nat(1)?, w: num(2)? },
            "regp" => Arc::RegP { u: nat(0)?, k: nat(1)? },
            "regq" => Arc::RegQ { u: nat(0)?, k: nat(1)? },
            _ => return Err(err(&format!("unknown arc kind `{head}`"))),
        });
    }
    let model = model.ok_or(SurfaceError::Syntax { line: 0, message: "empty input".into() })?;
    model.validate()?;
    Ok(Angulation { model, arcs })
}

/// Whether `arc` is an m-diagonal of `model`.
pub fn is_m_diagonal(model: &Model, arc: &Arc) -> Result<bool, SurfaceError> {
    let range = |v: usize, bound: usize| if v < bound { Ok(()) } else { Err(SurfaceError::OutOfRange(v as i64)) };
    match (*model, *arc) {
        (Model::Disk { n, m }, Arc::Disk { a, b }) => {
            let np = n * m + 2;
            range(a, np)?;
            range(b, np)?;
            let gap = (b + np - a) % np;
            Ok((2..=n * m).contains(&gap) && gap % m == 1 % m)
        }
        (Model::Annulus { p, q, m }, Arc::Trans { x, y, .. }) => {
            range(x, m * p)?;
            range(y, m * q)?;
            Ok(x % m == y % m)
        }
        (Model::Annulus { p, m, .. }, Arc::RegP { u, k }) => {
            range(u, m * p)?;
            Ok(k >= 1 && k * m + 1 < m * p)
        }
        (Model::Annulus { q, m, .. }, Arc::RegQ { u, k }) => {
            range(u, m * q)?;
            Ok(k >= 1 && k * m + 1 < m * q)
        }
        _ => Err(SurfaceError::InvalidModel(format!("{} does not live on {model:?}", arc.describe()))),
    }
}

/// A lift of an annulus arc to the strip.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Lift {
    Trans(i64, i64),
    Top(i64, i64),
    Bottom(i64, i64),
}

fn lift(model: &Model, arc: &Arc, k: i64) -> Lift {
    let Model::Annulus { p, q, m } = *model else { unreachable!("lifts exist for the annulus only") };
    let (mp, mq, m) = ((m * p) as i64, (m * q) as i64, m as i64);
    match *arc {
        Arc::Trans { x, y, w } => Lift::Trans(x as i64 + k * mp, -(y as i64) + (w + k) * mq),
        Arc::RegP { u, k: j } => {
            let a = u as i64 + k * mp;
            Lift::Top(a, a + j as i64 * m + 1)
        }
        Arc::RegQ { u, k: j } => {
            let b = -(u as i64) + k * mq;
            Lift::Bottom(b - j as i64 * m - 1, b)
        }
        Arc::Disk { .. } => unreachable!("disk arcs have no lift"),
    }
}

fn interleave(a: i64, b: i64, c: i64, d: i64) -> bool {
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

fn lifts_cross(l1: Lift, l2: Lift) -> bool {
    match (l1, l2) {
        (Lift::Trans(t1, p1), Lift::Trans(t2, p2)) => (t1 - t2) * (p1 - p2) < 0,
        (Lift::Top(a, b), Lift::Top(c, d)) | (Lift::Bottom(a, b), Lift::Bottom(c, d)) => interleave(a, b, c, d),
        (Lift::Top(a, b), Lift::Trans(t, _)) | (Lift::Trans(t, _), Lift::Top(a, b)) => a < t && t < b,
        (Lift::Bottom(a, b), Lift::Trans(_, s)) | (Lift::Trans(_, s), Lift::Bottom(a, b)) => a < s && s < b,
        _ => false,
    }
}

fn winding(arc: &Arc) -> i64 {
    match *arc {
        Arc::Trans { w, .. } => w.abs(),
        _ => 0,
    }
}

/// Whether the interiors of two distinct arcs must intersect.
pub fn cross(model: &Model, d1: &Arc, d2: &Arc) -> bool {
    if d1 == d2 {
        return false;
    }
    match (*d1, *d2) {
        (Arc::Disk { a, b }, Arc::Disk { a: c, b: d }) => interleave(a as i64, b as i64, c as i64, d as i64),
        _ => {
            let r = winding(d1) + winding(d2) + 2;
            let l1 = lift(model, d1, 0);
            (-r..=r).any(|k| lifts_cross(l1, lift(model, d2, k)))
        }
    }
}

/// A side of a face.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Edge {
    Boundary,
    /// Index into the arc list.
    Arc(usize),
}

/// A convex polygon with labelled sides and chords.
struct Dissection {
    n: usize,
    sides: Vec<Edge>,
    chords: Vec<(usize, usize, usize)>,
}

impl Dissection {
    /// Faces as edge sequences in clockwise order.
    fn faces(&self) -> Vec<Vec<Edge>> {
        let n = self.n;
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut label: HashMap<(usize, usize), Edge> = HashMap::new();
        for i in 0..n {
            let j = (i + 1) % n;
            adj[i].push(j);
            adj[j].push(i);
            label.insert((i.min(j), i.max(j)), self.sides[i]);
        }
        for &(a, b, arc) in &self.chords {
            adj[a].push(b);
            adj[b].push(a);
            label.insert((a.min(b), a.max(b)), Edge::Arc(arc));
        }
        let cw = |v: usize, w: usize| (w + n - v) % n;
        let next = |u: usize, v: usize| adj[v].iter().copied().filter(|&w| cw(v, w) < cw(v, u)).max_by_key(|&w| cw(v, w));
        let mut seen = HashSet::new();
        let mut faces = Vec::new();
        let mut starts: Vec<(usize, usize)> = Vec::new();
        for i in 0..n {
            starts.push((i, (i + 1) % n));
        }
        for &(a, b, _) in &self.chords {
            starts.push((a, b));
            starts.push((b, a));
        }
        for start in starts {
            if seen.contains(&start) {
                continue;
            }
            let mut face = Vec::new();
            let (mut u, mut v) = start;
            loop {
                seen.insert((u, v));
                face.push(label[&(u.min(v), u.max(v))]);
                let Some(w) = next(u, v) else { break };
                (u, v) = (v, w);
                if (u, v) == start {
                    break;
                }
            }
            faces.push(face);
        }
        faces
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AngulationCheck {
    pub ok: bool,
    pub reason: Option<String>,
    pub faces: Vec<Vec<Edge>>,
}

fn reject(reason: String) -> AngulationCheck {
    AngulationCheck { ok: false, reason: Some(reason), faces: Vec::new() }
}

/// Checks validity and noncrossing of the arcs and that every face is an
/// (m+2)-gon; returns the faces.
pub fn is_angulation(ang: &Angulation) -> Result<AngulationCheck, SurfaceError> {
    ang.model.validate()?;
    let m = ang.model.m();
    let mut distinct = HashSet::new();
    for a in &ang.arcs {
        if !is_m_diagonal(&ang.model, a)? {
            return Ok(reject(format!("{} is not an m-diagonal", a.describe())));
        }
        if !distinct.insert(*a) {
            return Ok(reject(format!("{} is repeated", a.describe())));
        }
    }
    for (i, a) in ang.arcs.iter().enumerate() {
        for b in &ang.arcs[i + 1..] {
            if cross(&ang.model, a, b) {
                return Ok(reject(format!("{} crosses {}", a.describe(), b.describe())));
            }
        }
    }
    let dissection = match ang.model {
        Model::Disk { n, m } => {
            let chords = ang
                .arcs
                .iter()
                .enumerate()
                .map(|(i, a)| match *a {
                    Arc::Disk { a, b } => (a, b, i),
                    _ => unreachable!("validated"),
                })
                .collect();
            Dissection { n: n * m + 2, sides: vec![Edge::Boundary; n * m + 2], chords }
        }
        Model::Annulus { .. } => match annulus_dissection(ang) {
            Ok(d) => d,
            Err(reason) => return Ok(reject(reason)),
        },
    };
    let faces = dissection.faces();
    if let Some(f) = faces.iter().find(|f| f.len() != m + 2) {
        return Ok(reject(format!("a face has {} sides, expected {}", f.len(), m + 2)));
    }
    if let Model::Disk { n, .. } = ang.model {
        if ang.arcs.len() != n - 1 || faces.len() != n {
            return Ok(reject(format!("{} diagonals and {} faces, expected {} and {n}", ang.arcs.len(), faces.len(), n - 1)));
        }
    }
    Ok(AngulationCheck { ok: true, reason: None, faces })
}

fn annulus_dissection(ang: &Angulation) -> Result<Dissection, String> {
    let Model::Annulus { p, q, m } = ang.model else { unreachable!() };
    let (mp, mq) = ((m * p) as i64, (m * q) as i64);
    let cut = ang
        .arcs
        .iter()
        .position(|a| matches!(a, Arc::Trans { .. }))
        .ok_or("no transjective arc, so some face is not a polygon")?;
    let Lift::Trans(t0, p0) = lift(&ang.model, &ang.arcs[cut], 0) else { unreachable!() };
    let n = (mp + mq + 2) as usize;
    let top = |t: i64| (t - t0) as usize;
    let bottom = |s: i64| (mp + 1 + (p0 + mq - s)) as usize;
    let mut sides = vec![Edge::Boundary; n];
    sides[mp as usize] = Edge::Arc(cut);
    sides[n - 1] = Edge::Arc(cut);
    let mut chords = Vec::new();
    for (i, a) in ang.arcs.iter().enumerate() {
        if i == cut {
            continue;
        }
        let r = winding(a) + winding(&ang.arcs[cut]) + 3;
        let inside = (-r..=r).map(|k| lift(&ang.model, a, k)).find(|l| match *l {
            Lift::Trans(t, s) => {
                (t0..=t0 + mp).contains(&t) && (p0..=p0 + mq).contains(&s) && (t, s) != (t0, p0) && (t, s) != (t0 + mp, p0 + mq)
            }
            Lift::Top(x, y) => t0 <= x && y <= t0 + mp,
            Lift::Bottom(x, y) => p0 <= x && y <= p0 + mq,
        });
        let chord = match inside.ok_or_else(|| format!("{} has no lift between the cut copies", a.describe()))? {
            Lift::Trans(t, s) => (top(t), bottom(s)),
            Lift::Top(x, y) => (top(x), top(y)),
            Lift::Bottom(x, y) => (bottom(y), bottom(x)),
        };
        chords.push((chord.0, chord.1, i));
    }
    Ok(Dissection { n, sides, chords })
}

/// One vertex `x<i>` per arc; an arrow from each arc to the next arc in
/// clockwise face order, and a relation for each three consecutive arcs of a
/// face.
pub fn quiver_from_angulation(ang: &Angulation) -> Result<BoundQuiver, SurfaceError> {
    let check = is_angulation(ang)?;
    if !check.ok {
        return Err(SurfaceError::NotAngulation(check.reason.unwrap_or_default()));
    }
    let mut q = Quiver::new();
    let vs: Vec<_> = (0..ang.arcs.len()).map(|i| q.add_vertex(&format!("x{}", i + 1))).collect::<Result<_, _>>()?;
    let mut relations: Vec<Vec<ArrowId>> = Vec::new();
    for face in &check.faces {
        let s = face.len();
        let mut arrows: Vec<Option<ArrowId>> = vec![None; s];
        for k in 0..s {
            if let (Edge::Arc(i), Edge::Arc(j)) = (face[k], face[(k + 1) % s]) {
                let name = format!("a{}", q.arrow_count() + 1);
                arrows[k] = Some(q.add_arrow(&name, vs[i], vs[j])?);
            }
        }
        for k in 0..s {
            if let (Some(x), Some(y)) = (arrows[k], arrows[(k + 1) % s]) {
                relations.push(vec![x, y]);
            }
        }
    }
    let name = match ang.model {
        Model::Disk { n, m } => format!("disk-n{n}-m{m}"),
        Model::Annulus { p, q, m } => format!("annulus-p{p}-q{q}-m{m}"),
    };
    Ok(BoundQuiver::new(&name, q, relations)?.0)
}

/// Fills the polygon `poly` (labels in clockwise order, size `jm+2`) with
/// chords, choosing at each step the face on the side `(poly[0], poly[last])`.
fn dissect<R: Rng>(poly: &[usize], m: usize, rng: &mut R, out: &mut Vec<(usize, usize)>) {
    let k = poly.len();
    let j = (k - 2) / m;
    if j <= 1 {
        return;
    }
    let mut extra = vec![0usize; m + 1];
    for _ in 0..j - 1 {
        extra[rng.gen_range(0..=m)] += 1;
    }
    let mut pos = 0;
    for e in extra {
        let next = pos + 1 + m * e;
        if e > 0 {
            out.push((poly[pos], poly[next]));
            dissect(&poly[pos..=next], m, rng, out);
        }
        pos = next;
    }
}

fn all_dissections(poly: &[usize], m: usize) -> Vec<Vec<(usize, usize)>> {
    let k = poly.len();
    let j = (k - 2) / m;
    if j <= 1 {
        return vec![Vec::new()];
    }
    let mut results = Vec::new();
    for extra in compositions(j - 1, m + 1) {
        let mut partial: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
        let mut pos = 0;
        for e in extra {
            let next = pos + 1 + m * e;
            if e > 0 {
                let subs = all_dissections(&poly[pos..=next], m);
                let chord = (poly[pos], poly[next]);
                partial = partial
                    .iter()
                    .flat_map(|base| {
                        subs.iter().map(move |s| {
                            let mut v = base.clone();
                            v.push(chord);
                            v.extend(s.iter().copied());
                            v
                        })
                    })
                    .collect();
            }
            pos = next;
        }
        results.extend(partial);
    }
    results
}

/// Weak compositions of `total` into `parts` parts.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    (0..=total)
        .flat_map(|first| {
            compositions(total - first, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

fn disk_angulation(n: usize, m: usize, chords: Vec<(usize, usize)>) -> Angulation {
    let mut arcs: Vec<Arc> = chords.into_iter().map(|(a, b)| Arc::disk(a, b)).collect();
    arcs.sort();
    Angulation { model: Model::Disk { n, m }, arcs }
}

/// All (m+2)-angulations of the (nm+2)-gon.
pub fn enumerate_disk_angulations(n: usize, m: usize) -> Result<Vec<Angulation>, SurfaceError> {
    Model::Disk { n, m }.validate()?;
    let poly: Vec<usize> = (0..n * m + 2).collect();
    Ok(all_dissections(&poly, m).into_iter().map(|c| disk_angulation(n, m, c)).collect())
}

/// Number of (m+2)-angulations of the (nm+2)-gon, by the Fuss-Catalan formula.
pub fn disk_angulation_count(n: usize, m: usize) -> u128 {
    let top = ((m + 1) * n) as u128;
    let mut binom: u128 = 1;
    for i in 0..n as u128 {
        binom = binom * (top + 1 - i) / (i + 1);
    }
    binom / (top + 1)
}

const ANNULUS_RETRIES: usize = 1000;

/// A random angulation, deterministic in `seed`.
pub fn random_angulation(model: &Model, seed: u64) -> Result<Angulation, SurfaceError> {
    model.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match *model {
        Model::Disk { n, m } => {
            let poly: Vec<usize> = (0..n * m + 2).collect();
            let mut chords = Vec::new();
            dissect(&poly, m, &mut rng, &mut chords);
            Ok(disk_angulation(n, m, chords))
        }
        Model::Annulus { p, q, m } => {
            let (mp, mq) = (m * p, m * q);
            for _ in 0..ANNULUS_RETRIES {
                let x = rng.gen_range(0..mp);
                let ys: Vec<usize> = (0..mq).filter(|y| y % m == x % m).collect();
                let y = ys[rng.gen_range(0..ys.len())];
                let cut = Arc::Trans { x, y, w: 0 };
                let Lift::Trans(t0, p0) = lift(model, &cut, 0) else { unreachable!() };
                let n = mp + mq + 2;
                let poly: Vec<usize> = (0..n).collect();
                let mut chords = Vec::new();
                dissect(&poly, m, &mut rng, &mut chords);
                let mut arcs = vec![cut];
                let mut ok = true;
                for (a, b) in chords {
                    match chord_to_arc(*model, t0, p0, a.min(b), a.max(b)) {
                        Some(arc) => arcs.push(arc),
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                if !ok {
                    continue;
                }
                arcs.sort();
                let ang = Angulation { model: *model, arcs };
                if is_angulation(&ang)?.ok {
                    return Ok(ang);
                }
            }
            Err(SurfaceError::RetryBudget(ANNULUS_RETRIES))
        }
    }
}

/// The arc of a chord `(a, b)`, `a < b`, of the polygon cut along the
/// transjective lift `(t0, p0)`; `None` for chords that close up around the
/// annulus.
fn chord_to_arc(model: Model, t0: i64, p0: i64, a: usize, b: usize) -> Option<Arc> {
    let Model::Annulus { p, q, m } = model else { unreachable!() };
    let (mp, mq) = ((m * p) as i64, (m * q) as i64);
    let (a, b) = (a as i64, b as i64);
    let is_top = |i: i64| i <= mp;
    let pos_top = |i: i64| t0 + i;
    let pos_bottom = |i: i64| p0 + mq - (i - mp - 1);
    if is_top(a) && is_top(b) {
        let span = b - a;
        if span >= mp {
            return None;
        }
        let u = pos_top(a).rem_euclid(mp) as usize;
        return Some(Arc::RegP { u, k: ((span - 1) / m as i64) as usize });
    }
    if !is_top(a) && !is_top(b) {
        let (lo, hi) = (pos_bottom(b), pos_bottom(a));
        let span = hi - lo;
        if span >= mq {
            return None;
        }
        let u = (-hi).rem_euclid(mq) as usize;
        return Some(Arc::RegQ { u, k: ((span - 1) / m as i64) as usize });
    }
    let (t, s) = (pos_top(a), pos_bottom(b));
    let x = t.rem_euclid(mp);
    let y = (-s).rem_euclid(mq);
    let k = (t - x) / mp;
    let w = (s + y) / mq - k;
    Some(Arc::Trans { x: x as usize, y: y as usize, w })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Flag {
    pub holds: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AngulationReport {
    pub gentle: Flag,
    pub saturated_cycles_have_length_m_plus_2: Flag,
    pub relation_chains_outside_cycles_at_most_m_minus_1: Flag,
    pub gorenstein_at_most_m: Flag,
    pub gorenstein_dimension: Option<usize>,
}

impl AngulationReport {
    pub fn all(&self) -> bool {
        self.gentle.holds
            && self.saturated_cycles_have_length_m_plus_2.holds
            && self.relation_chains_outside_cycles_at_most_m_minus_1.holds
            && self.gorenstein_at_most_m.holds
    }
}

fn flag(holds: bool, witness: impl FnOnce() -> String) -> Flag {
    Flag { holds, witness: if holds { None } else { Some(witness()) } }
}

/// Longest chain `a1 a2, a2 a3, ...` of relations that lie on no saturated
/// cycle, counted in relations, with the chain itself.
pub fn longest_free_relation_chain(bq: &BoundQuiver) -> (usize, Vec<ArrowId>) {
    let cycles = saturated_cycles(bq);
    let on_cycle = |a: ArrowId, b: ArrowId| cycles.iter().any(|c| (0..c.len()).any(|i| c.arrow(i) == a && c.arrow(i + 1) == b));
    let free: Vec<(ArrowId, ArrowId)> = bq
        .relations()
        .iter()
        .filter(|r| r.arrows.len() == 2 && !on_cycle(r.arrows[0], r.arrows[1]))
        .map(|r| (r.arrows[0], r.arrows[1]))
        .collect();
    // longest path in the relation graph, which is acyclic once cycle
    // relations are removed
    let n = bq.quiver().arrow_count();
    let mut best: Vec<Option<(usize, Vec<ArrowId>)>> = vec![None; n];
    fn visit(
        a: ArrowId,
        free: &[(ArrowId, ArrowId)],
        best: &mut Vec<Option<(usize, Vec<ArrowId>)>>,
        depth: usize,
    ) -> (usize, Vec<ArrowId>) {
        if let Some(b) = &best[a.0] {
            return b.clone();
        }
        let mut out = (0, vec![a]);
        if depth <= free.len() {
            for &(x, y) in free {
                if x == a {
                    let (len, path) = visit(y, free, best, depth + 1);
                    if len + 1 > out.0 {
                        let mut p = vec![a];
                        p.extend(path);
                        out = (len + 1, p);
                    }
                }
            }
        }
        best[a.0] = Some(out.clone());
        out
    }
    let mut top = (0, Vec::new());
    for a in bq.quiver().arrows() {
        let r = visit(a, &free, &mut best, 0);
        if r.0 > top.0 {
            top = r;
        }
    }
    top
}

/// The structural properties of an angulation algebra: gentle, saturated
/// cycles of length m+2, at most m-1 consecutive relations off saturated
/// cycles, and Gorenstein dimension at most m (by the oracle).
pub fn verify_angulation_properties(ang: &Angulation, bq: &BoundQuiver) -> AngulationReport {
    let m = ang.model.m();
    let report = classify(bq);
    let gentle = flag(report.is_gentle, || report.violations.iter().map(|v| v.witness.clone()).collect::<Vec<_>>().join("; "));
    let cycles = saturated_cycles(bq);
    let bad = cycles.iter().find(|c| c.len() != m + 2);
    let lengths = flag(bad.is_none(), || {
        let c = bad.expect("failing cycle");
        format!("{} has length {}", c.display(bq), c.len())
    });
    let (chain, path) = longest_free_relation_chain(bq);
    let chains = flag(chain < m, || format!("{} consecutive relations along {}", chain, bq.display_arrows(&path)));
    let d = Oracle::<F10007>::new(bq.clone()).ok().and_then(|o| o.gorenstein_dimension(o.default_cutoff()).ok());
    let (gorenstein_dimension, gor) = match d {
        Some(Dimension::Finite(d)) => (Some(d), flag(d <= m, || format!("Gorenstein dimension {d}"))),
        Some(other) => (None, flag(false, || other.describe())),
        None => (None, flag(false, || "oracle failed".to_string())),
    };
    AngulationReport {
        gentle,
        saturated_cycles_have_length_m_plus_2: lengths,
        relation_chains_outside_cycles_at_most_m_minus_1: chains,
        gorenstein_at_most_m: gor,
        gorenstein_dimension,
    }
}
