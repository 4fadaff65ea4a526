//! Seeded random instances for the property suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::blocks::{glue, BlockKind, Glued, Outlet};
use crate::classify::classify;
use crate::quiver::{ArrowId, BoundQuiver, Quiver, VertexId};

/// Blocks, a matching and the glued algebra.
#[derive(Clone, Debug)]
pub struct BlockInstance {
    pub seed: u64,
    pub kinds: Vec<BlockKind>,
    pub matching: Vec<(Outlet, Outlet)>,
    pub glued: Glued,
}

const RETRIES: usize = 200;

fn random_kind<R: Rng>(rng: &mut R) -> BlockKind {
    match rng.gen_range(0..20) {
        0..=8 => BlockKind::I,
        9..=16 => BlockKind::II,
        _ => BlockKind::Loop,
    }
}

/// A random gluing of at most `max_blocks` blocks into a finite-dimensional
/// gentle algebra with at most `max_vertices` vertices.
pub fn random_block_instance(seed: u64, max_blocks: usize, max_vertices: usize) -> BlockInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RETRIES {
        let count = rng.gen_range(1..=max_blocks.max(1));
        let kinds: Vec<BlockKind> = (0..count).map(|_| random_kind(&mut rng)).collect();
        let mut outlets: Vec<Outlet> =
            kinds.iter().enumerate().flat_map(|(b, k)| (0..k.outlet_count()).map(move |o| (b, o))).collect();
        outlets.shuffle(&mut rng);
        let mut used = vec![false; outlets.len()];
        let mut matching = Vec::new();
        for i in 0..outlets.len() {
            if used[i] || rng.gen_bool(0.25) {
                continue;
            }
            let x = outlets[i];
            let partner = (i + 1..outlets.len()).find(|&j| {
                let y = outlets[j];
                !used[j] && x.0 != y.0 && !(kinds[x.0] == BlockKind::Loop && kinds[y.0] == BlockKind::Loop)
            });
            if let Some(j) = partner {
                used[i] = true;
                used[j] = true;
                let y = outlets[j];
                matching.push((x.min(y), x.max(y)));
            }
        }
        matching.sort();
        let total: usize = kinds.iter().map(|k| k.outlet_count()).sum();
        if total - matching.len() > max_vertices {
            continue;
        }
        let Ok(glued) = glue(&kinds, &matching) else { continue };
        if glued.bound_quiver.admissibility().is_finite() {
            return BlockInstance { seed, kinds, matching, glued };
        }
    }
    // a single type I block always glues
    let kinds = vec![BlockKind::I];
    let glued = glue(&kinds, &[]).expect("one arrow glues");
    BlockInstance { seed, kinds, matching: Vec::new(), glued }
}

/// A random finite-dimensional gentle algebra with between 2 and
/// `max_vertices` vertices and dimension at most `max_dim`.
pub fn random_gentle(seed: u64, max_vertices: usize, max_dim: usize) -> BoundQuiver {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        if let Some(bq) = try_gentle(&mut rng, max_vertices.max(2), max_dim, seed) {
            return bq;
        }
    }
}

fn try_gentle<R: Rng>(rng: &mut R, max_vertices: usize, max_dim: usize, seed: u64) -> Option<BoundQuiver> {
    let n = rng.gen_range(2..=max_vertices);
    let mut q = Quiver::new();
    let vs: Vec<VertexId> = (1..=n).map(|i| q.add_vertex(&i.to_string()).expect("fresh name")).collect();
    let mut outdeg = vec![0usize; n];
    let mut indeg = vec![0usize; n];
    let mut edges: Vec<(usize, usize)> = Vec::new();
    // spanning tree with random orientations, then a few extra arrows
    for i in 1..n {
        let j = rng.gen_range(0..i);
        let (s, t) = if rng.gen_bool(0.5) { (i, j) } else { (j, i) };
        if outdeg[s] < 2 && indeg[t] < 2 {
            outdeg[s] += 1;
            indeg[t] += 1;
            edges.push((s, t));
        }
    }
    for _ in 0..rng.gen_range(0..=n / 2 + 1) {
        let (s, t) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if outdeg[s] < 2 && indeg[t] < 2 {
            outdeg[s] += 1;
            indeg[t] += 1;
            edges.push((s, t));
        }
    }
    for (k, &(s, t)) in edges.iter().enumerate() {
        q.add_arrow(&format!("a{}", k + 1), vs[s], vs[t]).expect("fresh name");
    }
    let mut relations = Vec::new();
    for v in &vs {
        let mut ins: Vec<ArrowId> = q.incoming(*v).to_vec();
        let mut outs: Vec<ArrowId> = q.outgoing(*v).to_vec();
        ins.shuffle(rng);
        outs.shuffle(rng);
        // relations at v form a partial matching between incoming and
        // outgoing arrows that is perfect on any side of size two
        let forced = ins.len() == 2 || outs.len() == 2;
        for (a, b) in ins.iter().zip(outs.iter()) {
            if forced || rng.gen_bool(0.5) {
                relations.push(vec![*a, *b]);
            }
        }
    }
    let (bq, _) = BoundQuiver::new(&format!("gentle-{seed}"), q, relations).ok()?;
    if !bq.admissibility().is_finite() || !classify(&bq).is_gentle {
        return None;
    }
    if bq.dimension().ok()? > max_dim {
        return None;
    }
    Some(bq)
}
