//! Conflict-graph form of the redundancy question: `G_f(k, t, r)` has a
//! vertex `(u, p)` for every message `u` and redundancy word `p` of length
//! `r`, and an edge between distinct vertices that share `u`, or whose
//! messages have different `f`-values and whose concatenations lie within
//! distance `2t`. An independent set of size `2^k` is exactly an FCC with
//! redundancy `r`.

use crate::construct::Mode;
use crate::error::{FccError, Result};

pub const MAX_VERTEX_BITS: usize = 8;
const WORDS: usize = (1 << MAX_VERTEX_BITS) / 64;
pub const GAMMA_NODE_BUDGET: u64 = 50_000_000;

type VertexSet = [u64; WORDS];

struct ConflictGraph {
    r: usize,
    adjacency: Vec<VertexSet>,
}

impl ConflictGraph {
    fn build(k: usize, t: usize, r: usize, mode: Mode) -> Self {
        let n = 1usize << (k + r);
        let vertex = |u: usize, p: usize| (u << r) | p;
        let mut adjacency = vec![[0u64; WORDS]; n];
        for u1 in 0..1usize << k {
            for u2 in 0..1usize << k {
                let differ =
                    mode.value(u1.count_ones() as usize) != mode.value(u2.count_ones() as usize);
                if u1 != u2 && !differ {
                    continue;
                }
                let du = (u1 ^ u2).count_ones() as usize;
                for p1 in 0..1usize << r {
                    for p2 in 0..1usize << r {
                        let adjacent = if u1 == u2 {
                            p1 != p2
                        } else {
                            du + (p1 ^ p2).count_ones() as usize <= 2 * t
                        };
                        if adjacent {
                            let (a, b) = (vertex(u1, p1), vertex(u2, p2));
                            adjacency[a][b / 64] |= 1 << (b % 64);
                        }
                    }
                }
            }
        }
        ConflictGraph { r, adjacency }
    }
}

fn contains(set: &VertexSet, v: usize) -> bool {
    (set[v / 64] >> (v % 64)) & 1 == 1
}

/// Whether `G_f(k, t, r)` has an independent set of size `2^k`, decided by
/// choosing one vertex per message. Requires `k + r <= 8`.
pub fn gamma_check(k: usize, t: usize, r: usize, mode: Mode) -> Result<bool> {
    if k == 0 {
        return Err(FccError::arg("k must be positive"));
    }
    if k + r > MAX_VERTEX_BITS {
        return Err(FccError::Feasibility(format!(
            "k + r = {} exceeds {MAX_VERTEX_BITS} (at most 256 vertices)",
            k + r
        )));
    }
    if let Mode::Distribution { bin_width: 0 } = mode {
        return Err(FccError::arg("bin width must be at least 1"));
    }
    let graph = ConflictGraph::build(k, t, r, mode);
    // messages by weight so that conflicting neighbours are placed early
    let mut messages: Vec<usize> = (0..1usize << k).collect();
    messages.sort_by_key(|&u| (u.count_ones(), u));
    let mut nodes = 0;
    let found = place(&graph, &messages, [0; WORDS], &mut nodes)?;
    Ok(found)
}

fn place(
    graph: &ConflictGraph,
    messages: &[usize],
    blocked: VertexSet,
    nodes: &mut u64,
) -> Result<bool> {
    let Some((&u, rest)) = messages.split_first() else {
        return Ok(true);
    };
    *nodes += 1;
    if *nodes > GAMMA_NODE_BUDGET {
        return Err(FccError::Feasibility(format!(
            "independent-set search exceeded {GAMMA_NODE_BUDGET} nodes"
        )));
    }
    // translating every redundancy word by a constant is an automorphism,
    // so the first message may take p = 0
    let choices = if blocked == [0; WORDS] {
        1
    } else {
        1usize << graph.r
    };
    for p in 0..choices {
        let v = (u << graph.r) | p;
        if contains(&blocked, v) {
            continue;
        }
        let mut next = blocked;
        for (w, a) in next.iter_mut().zip(graph.adjacency[v].iter()) {
            *w |= a;
        }
        if place(graph, rest, next, nodes)? {
            return Ok(true);
        }
    }
    Ok(false)
}
