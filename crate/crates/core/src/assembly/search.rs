//! Search for gluings whose blue arcs all close after `p` steps.
//!
//! Blue arcs are tracked through *junctions*: `J(c)` is the end of the red
//! side `red(c)`, where the blue side `blue(c)` starts. Inside a block the
//! arc of map edge `{d, θd}` joins `J(d)` to `J(θd)`. Across a boundary
//! gluing `τ`, `J(c)` meets `J(τc)` when the direction is kept and
//! `J(φ⁻¹(τc))` when it is reversed, `φ` being the face step. A blue curve
//! is an orbit of "arc, then cross", and all of them must have length `p`.

use alloc::vec;
use alloc::vec::Vec;

use super::{Block, Gluing};
use crate::graph::HalfEdgeGraph;

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    /// The first closing gluing the caller accepted.
    pub gluing: Option<Gluing>,
    /// Closing gluings seen, accepted or not.
    pub closing_gluings: usize,
    /// Partial assignments visited.
    pub nodes: usize,
}

/// Enumerates gluings of copies of `block` along `graph`.
///
/// Boundary `i` is attached along the `i`-th dart of each sorted star; any
/// other assignment is carried to this one by a block automorphism when the
/// block map is flag-transitive, at the cost of changing signs and shifts,
/// which are searched in full. The first vertex keeps sign `+1`. Signs are
/// tried in binary order and shifts lexicographically by edge; `accept` is
/// called on every gluing whose blue arcs close and the search stops at the
/// first `true`.
pub fn search_gluings<F: FnMut(&Gluing) -> bool>(block: &Block, graph: &HalfEdgeGraph, mut accept: F) -> SearchOutcome {
    let n = graph.num_vertices();
    let d = block.num_boundaries();
    let mut outcome = SearchOutcome { gluing: None, closing_gluings: 0, nodes: 0 };
    if n == 0 || graph.regular_valence() != Some(d) {
        return outcome;
    }
    let mut face_of_dart = vec![0; graph.num_darts()];
    for v in 0..n {
        for (i, &a) in graph.star(v).iter().enumerate() {
            face_of_dart[a] = i;
        }
    }
    for mask in 0..(1u64 << (n - 1)) {
        let sign: Vec<i8> = (0..n).map(|v| if v > 0 && mask >> (v - 1) & 1 == 1 { -1 } else { 1 }).collect();
        let mut state = Junctions {
            block,
            graph,
            sign: &sign,
            face_of_dart: &face_of_dart,
            shift: vec![None; graph.num_edges()],
        };
        if state.descend(0, &mut outcome, &mut accept) {
            break;
        }
    }
    outcome
}

struct Junctions<'a> {
    block: &'a Block,
    graph: &'a HalfEdgeGraph,
    sign: &'a [i8],
    face_of_dart: &'a [usize],
    shift: Vec<Option<usize>>,
}

impl Junctions<'_> {
    fn descend<F: FnMut(&Gluing) -> bool>(&mut self, edge: usize, out: &mut SearchOutcome, accept: &mut F) -> bool {
        out.nodes += 1;
        if !self.consistent() {
            return false;
        }
        if edge == self.shift.len() {
            out.closing_gluings += 1;
            let gluing = Gluing::new(
                self.graph.clone(),
                self.sign.to_vec(),
                self.face_of_dart.to_vec(),
                self.shift.iter().map(|s| s.expect("complete")).collect(),
            )
            .expect("standard assignment is valid");
            if accept(&gluing) {
                out.gluing = Some(gluing);
                return true;
            }
            return false;
        }
        for s in 0..self.block.p() {
            self.shift[edge] = Some(s);
            if self.descend(edge + 1, out, accept) {
                return true;
            }
        }
        self.shift[edge] = None;
        false
    }

    /// Junction reached by leaving `(v, c)` across its boundary, if that edge is decided.
    fn cross(&self, v: usize, c: usize) -> Option<(usize, usize)> {
        let b = self.block;
        let p = b.p();
        let f = b.face_of(c);
        let a = *self.graph.star(v).iter().find(|&&a| self.face_of_dart[a] == f)?;
        let e = self.graph.edge_of(a);
        let s = self.shift[e]? % p;
        let far = self.graph.theta(a);
        let w = self.graph.vertex_of(far);
        let k = b.face_position(c);
        let keeps = self.sign[v] != self.sign[w];
        let k2 = match (keeps, a == self.graph.edge_darts(e)[0]) {
            (true, true) => (k + s) % p,
            (true, false) => (k + p - s) % p,
            (false, _) => (s + p - k) % p,
        };
        let face = b.boundary(self.face_of_dart[far]);
        Some((w, if keeps { face[k2] } else { face[(k2 + p - 1) % p] }))
    }

    /// No decided orbit closes early or runs past `p` steps.
    fn consistent(&self) -> bool {
        let theta = |c: usize| self.block.map().graph().theta(c);
        let p = self.block.p();
        for v in 0..self.graph.num_vertices() {
            for c0 in 0..self.block.map().graph().num_darts() {
                let mut at = (v, c0);
                for step in 1..=p {
                    match self.cross(at.0, theta(at.1)) {
                        None => break,
                        Some(next) => {
                            at = next;
                            if (at == (v, c0)) != (step == p) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assembly::{assemble, build_block};
    use crate::graph::catalog as graphs;
    use crate::maps::catalog as maps;

    #[test]
    fn k5_tetrahedral_gluings_exist() {
        let block = build_block(&maps::tetrahedron()).unwrap();
        let k5 = graphs::complete(5);
        let out = search_gluings(&block, &k5, |_| true);
        let gluing = out.gluing.expect("a closing gluing");
        let x = assemble(&block, &gluing).unwrap();
        assert_eq!(x.genus(), 6);
        let c = x.trace_curves().unwrap();
        assert_eq!((c.red().len(), c.blue().len()), (10, 10));
        assert_eq!(x.systole_count(&c).unwrap(), 20);
    }

    #[test]
    fn junction_model_agrees_with_tiles() {
        // every closing gluing found must trace closed blue curves on the tiles
        let block = build_block(&maps::tetrahedron()).unwrap();
        let k5 = graphs::complete(5);
        let mut seen = 0;
        search_gluings(&block, &k5, |g| {
            seen += 1;
            let x = assemble(&block, g).unwrap();
            assert!(x.trace_curves().is_ok());
            seen >= 20
        });
        assert!(seen > 0);
    }
}
