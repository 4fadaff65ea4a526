//! Block decompositions: bound quivers glued from single arrows (type I),
//! 3-cycles with all compositions zero (type II) and loops with `δ² = 0`.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::classify::{classify, saturated_cycles};
use crate::cm::verify_2cy_necessary;
use crate::error::BlockError;
use crate::quiver::{ArrowId, BoundQuiver, Quiver, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum BlockKind {
    I,
    II,
    Loop,
}

impl BlockKind {
    pub fn outlet_count(self) -> usize {
        match self {
            BlockKind::I => 2,
            BlockKind::II => 3,
            BlockKind::Loop => 1,
        }
    }
}

/// `(block index, outlet index)`. Type I outlets are (source, target); type
/// II outlets are the sources of `α, β, γ` with `α: 0 -> 1`, `β: 1 -> 2`,
/// `γ: 2 -> 0`.
pub type Outlet = (usize, usize);

/// A block inside a bound quiver.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub kind: BlockKind,
    pub arrows: Vec<ArrowId>,
    pub outlets: Vec<VertexId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
    /// Pairs of outlets identified to one vertex, each pair sorted.
    pub matching: Vec<(Outlet, Outlet)>,
}

impl BlockDecomposition {
    pub fn count(&self, kind: BlockKind) -> usize {
        self.blocks.iter().filter(|b| b.kind == kind).count()
    }

    pub fn kinds(&self) -> Vec<BlockKind> {
        self.blocks.iter().map(|b| b.kind).collect()
    }

    /// Lines `block <i> <kind> <arrows>` followed by `match <b>.<o> <b>.<o>`.
    pub fn serialize(&self, q: &Quiver) -> String {
        let mut out = String::new();
        for (i, b) in self.blocks.iter().enumerate() {
            let names: Vec<&str> = b.arrows.iter().map(|&a| q.arrow_name(a)).collect();
            out.push_str(&format!("block {i} {:?} {}\n", b.kind, names.join(" ")));
        }
        for ((b1, o1), (b2, o2)) in &self.matching {
            out.push_str(&format!("match {b1}.{o1} {b2}.{o2}\n"));
        }
        out
    }
}

/// Why a bound quiver has no block decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockWitness {
    pub rule: String,
    pub detail: String,
}

fn witness(rule: &str, detail: String) -> BlockWitness {
    BlockWitness { rule: rule.to_string(), detail }
}

/// Recognizes a gentle-block-decomposable bound quiver.
pub fn decompose_blocks(bq: &BoundQuiver) -> Result<BlockDecomposition, BlockWitness> {
    let report = classify(bq);
    if !report.is_gentle {
        let detail = report.violations.iter().map(|v| format!("{:?}: {}", v.condition, v.witness)).collect::<Vec<_>>();
        return Err(witness("gentle", detail.join("; ")));
    }
    let cy = verify_2cy_necessary(bq).map_err(|e| witness("gentle", e.to_string()))?;
    for (rule, check) in [
        ("gorenstein dimension at most one", &cy.gorenstein_at_most_one),
        ("each zero-relation lies in a saturated cycle", &cy.relations_on_saturated_cycles),
        ("saturated cycles have length three or are loops", &cy.cycles_are_triangles_or_loops),
    ] {
        if !check.holds {
            return Err(witness(rule, check.witness.clone().unwrap_or_default()));
        }
    }
    let q = bq.quiver();
    let mut blocks = Vec::new();
    let mut used = vec![false; q.arrow_count()];
    for c in saturated_cycles(bq) {
        for &a in &c.arrows {
            used[a.0] = true;
        }
        if c.is_loop() {
            blocks.push(Block { kind: BlockKind::Loop, arrows: c.arrows.clone(), outlets: vec![q.source(c.arrows[0])] });
        } else {
            let outlets = c.arrows.iter().map(|&a| q.source(a)).collect();
            blocks.push(Block { kind: BlockKind::II, arrows: c.arrows.clone(), outlets });
        }
    }
    for a in q.arrows() {
        if !used[a.0] {
            blocks.push(Block { kind: BlockKind::I, arrows: vec![a], outlets: vec![q.source(a), q.target(a)] });
        }
    }
    let mut occurrences: Vec<Vec<Outlet>> = vec![Vec::new(); q.vertex_count()];
    for (b, block) in blocks.iter().enumerate() {
        for (o, v) in block.outlets.iter().enumerate() {
            occurrences[v.0].push((b, o));
        }
    }
    let mut matching = Vec::new();
    for v in q.vertices() {
        let occ = &occurrences[v.0];
        match occ.len() {
            0 | 1 => {}
            2 => {
                let (x, y) = (occ[0], occ[1]);
                if x.0 == y.0 {
                    return Err(witness("no matching within a block", format!("vertex {}", q.vertex_name(v))));
                }
                if blocks[x.0].kind == BlockKind::Loop && blocks[y.0].kind == BlockKind::Loop {
                    return Err(witness("loop-loop matching", format!("vertex {}", q.vertex_name(v))));
                }
                matching.push((x.min(y), x.max(y)));
            }
            n => {
                return Err(witness("each outlet matched at most once", format!("vertex {} meets {n} blocks", q.vertex_name(v))))
            }
        }
    }
    matching.sort();
    Ok(BlockDecomposition { blocks, matching })
}

/// A bound quiver glued from blocks, with the block data kept.
#[derive(Clone, Debug)]
pub struct Glued {
    pub bound_quiver: BoundQuiver,
    /// Per block, the glued vertex of each outlet.
    pub outlet_vertex: Vec<Vec<VertexId>>,
    /// Per block, its arrows in the glued quiver.
    pub block_arrows: Vec<Vec<ArrowId>>,
}

/// Checks the matching rules on abstract blocks.
pub fn validate_matching(kinds: &[BlockKind], matching: &[(Outlet, Outlet)]) -> Result<(), BlockError> {
    let mut seen = BTreeSet::new();
    for &(x, y) in matching {
        for o in [x, y] {
            if o.0 >= kinds.len() || o.1 >= kinds[o.0].outlet_count() {
                return Err(BlockError::NoSuchOutlet(o.0, o.1));
            }
            if !seen.insert(o) {
                return Err(BlockError::OutletReused(o.0, o.1));
            }
        }
        if x.0 == y.0 {
            return Err(BlockError::SameBlock(x.0));
        }
        if kinds[x.0] == BlockKind::Loop && kinds[y.0] == BlockKind::Loop {
            return Err(BlockError::LoopLoop(x.0, y.0));
        }
    }
    Ok(())
}

/// Glues blocks along a partial matching of outlets. Arrows are named
/// `lambda<k>` (type I), `alpha<k> beta<k> gamma<k>` (type II) and `delta<k>`
/// (loop), counting blocks of each kind from 1; vertices are numbered in
/// order of first appearance.
pub fn glue(kinds: &[BlockKind], matching: &[(Outlet, Outlet)]) -> Result<Glued, BlockError> {
    validate_matching(kinds, matching)?;
    let mut partner: HashMap<Outlet, Outlet> = HashMap::new();
    for &(x, y) in matching {
        partner.insert(x, y);
        partner.insert(y, x);
    }
    let mut q = Quiver::new();
    let mut outlet_vertex: Vec<Vec<VertexId>> = kinds.iter().map(|k| Vec::with_capacity(k.outlet_count())).collect();
    let mut assigned: HashMap<Outlet, VertexId> = HashMap::new();
    for (b, k) in kinds.iter().enumerate() {
        for o in 0..k.outlet_count() {
            let v = match assigned.get(&(b, o)) {
                Some(&v) => v,
                None => {
                    let v = q.add_vertex(&(q.vertex_count() + 1).to_string())?;
                    assigned.insert((b, o), v);
                    if let Some(&p) = partner.get(&(b, o)) {
                        assigned.insert(p, v);
                    }
                    v
                }
            };
            outlet_vertex[b].push(v);
        }
    }
    let mut counters = HashMap::new();
    let mut block_arrows = Vec::new();
    let mut relations = Vec::new();
    for (b, k) in kinds.iter().enumerate() {
        let n = counters.entry(*k).or_insert(0);
        *n += 1;
        let vs = &outlet_vertex[b];
        let arrows = match k {
            BlockKind::I => vec![q.add_arrow(&format!("lambda{n}"), vs[0], vs[1])?],
            BlockKind::II => {
                let a = q.add_arrow(&format!("alpha{n}"), vs[0], vs[1])?;
                let bb = q.add_arrow(&format!("beta{n}"), vs[1], vs[2])?;
                let c = q.add_arrow(&format!("gamma{n}"), vs[2], vs[0])?;
                relations.extend([vec![a, bb], vec![bb, c], vec![c, a]]);
                vec![a, bb, c]
            }
            BlockKind::Loop => {
                let d = q.add_arrow(&format!("delta{n}"), vs[0], vs[0])?;
                relations.push(vec![d, d]);
                vec![d]
            }
        };
        block_arrows.push(arrows);
    }
    for a in q.arrows() {
        for &b in q.outgoing(q.target(a)) {
            if q.target(b) == q.source(a) && q.source(a) != q.target(a) {
                return Err(BlockError::OppositeArrows(
                    q.vertex_name(q.source(a)).to_string(),
                    q.vertex_name(q.target(a)).to_string(),
                ));
            }
        }
    }
    let (bq, _) = BoundQuiver::new("glued", q, relations)?;
    let report = classify(&bq);
    if !report.is_gentle {
        let w = report.violations.first().map(|v| v.witness.clone()).unwrap_or_default();
        return Err(BlockError::NotGentle(w));
    }
    Ok(Glued { bound_quiver: bq, outlet_vertex, block_arrows })
}

/// Whether `dec`, a decomposition of `glued`, has the same blocks and
/// matching as the gluing input once blocks are identified by their arrows.
pub fn same_decomposition(kinds: &[BlockKind], matching: &[(Outlet, Outlet)], glued: &Glued, dec: &BlockDecomposition) -> bool {
    if dec.blocks.len() != kinds.len() {
        return false;
    }
    let mut block_of_arrow = HashMap::new();
    for (i, b) in dec.blocks.iter().enumerate() {
        for &a in &b.arrows {
            block_of_arrow.insert(a, i);
        }
    }
    let mut image = Vec::with_capacity(kinds.len());
    for (b, k) in kinds.iter().enumerate() {
        let Some(&i) = block_of_arrow.get(&glued.block_arrows[b][0]) else { return false };
        let mut got: Vec<ArrowId> = dec.blocks[i].arrows.clone();
        let mut want = glued.block_arrows[b].clone();
        got.sort();
        want.sort();
        if dec.blocks[i].kind != *k || got != want {
            return false;
        }
        image.push(i);
    }
    let map_outlet = |(b, o): Outlet| -> Option<Outlet> {
        let i = image[b];
        let v = glued.outlet_vertex[b][o];
        dec.blocks[i].outlets.iter().position(|&w| w == v).map(|k| (i, k))
    };
    let mut mapped = Vec::new();
    for &(x, y) in matching {
        let (Some(a), Some(b)) = (map_outlet(x), map_outlet(y)) else { return false };
        mapped.push((a.min(b), a.max(b)));
    }
    mapped.sort();
    mapped == dec.matching
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::parse::write_bound_quiver;

    #[test]
    fn corrected_ej8_blocks() {
        let dec = decompose_blocks(&fixtures::ej8_corrected()).unwrap();
        assert_eq!(dec.count(BlockKind::I), 2);
        assert_eq!(dec.count(BlockKind::II), 3);
        assert_eq!(dec.count(BlockKind::Loop), 1);
        assert!(dec.serialize(fixtures::ej8_corrected().quiver()).contains("block 0 II alpha1 beta1 gamma1"));
    }

    #[test]
    fn literal_ej8_has_no_decomposition() {
        let w = decompose_blocks(&fixtures::ej8()).unwrap_err();
        assert_eq!(w.rule, "gentle");
        assert!(w.detail.contains("lambda1"));
    }

    #[test]
    fn small_decompositions() {
        let dec = decompose_blocks(&fixtures::lin3()).unwrap();
        assert_eq!(dec.kinds(), [BlockKind::I, BlockKind::I]);
        assert_eq!(dec.matching, [((0, 1), (1, 0))]);
        let two =
            BoundQuiver::from_names("c2", &["x", "y"], &[("a", "x", "y"), ("b", "y", "x")], &[&["a", "b"], &["b", "a"]]).unwrap();
        let w = decompose_blocks(&two).unwrap_err();
        assert_eq!(w.rule, "saturated cycles have length three or are loops");
    }

    #[test]
    fn gluing_examples() {
        let g = glue(&[BlockKind::II], &[]).unwrap();
        let a3c = fixtures::a3c();
        assert_eq!(g.bound_quiver.relations().len(), a3c.relations().len());
        assert_eq!(g.bound_quiver.dimension().unwrap(), a3c.dimension().unwrap());
        let g = glue(&[BlockKind::Loop], &[]).unwrap();
        assert!(write_bound_quiver(&g.bound_quiver).contains("rel delta1 delta1"));
        assert_eq!(glue(&[BlockKind::Loop, BlockKind::Loop], &[((0, 0), (1, 0))]).unwrap_err(), BlockError::LoopLoop(0, 1));
        assert_eq!(glue(&[BlockKind::II], &[((0, 0), (0, 1))]).unwrap_err(), BlockError::SameBlock(0));
        assert_eq!(
            glue(&[BlockKind::I, BlockKind::I, BlockKind::I], &[((0, 1), (1, 0)), ((0, 1), (2, 0))]).unwrap_err(),
            BlockError::OutletReused(0, 1)
        );
        // a type I arrow against alpha of a 3-cycle
        let err = glue(&[BlockKind::II, BlockKind::I], &[((0, 0), (1, 1)), ((0, 1), (1, 0))]).unwrap_err();
        assert!(matches!(err, BlockError::OppositeArrows(..)));
    }

    #[test]
    fn ej8_shape_round_trip() {
        use BlockKind::*;
        let kinds = [II, II, II, Loop, I, I];
        let matching = [((0, 1), (1, 0)), ((0, 2), (2, 0)), ((1, 1), (3, 0)), ((1, 2), (2, 2)), ((2, 1), (5, 0))];
        let g = glue(&kinds, &matching).unwrap();
        let dec = decompose_blocks(&g.bound_quiver).unwrap();
        assert!(same_decomposition(&kinds, &matching, &g, &dec));
    }
}
