//! Small named graphs used as fixtures and CLI inputs.

use alloc::vec::Vec;

use super::HalfEdgeGraph;

fn build(n: usize, edges: &[(usize, usize)]) -> HalfEdgeGraph {
    HalfEdgeGraph::from_edges(n, edges).expect("catalog graphs are well formed")
}

/// Two vertices joined by `d` parallel edges; edge `k` has dart `2k` at vertex 0.
pub fn theta(d: usize) -> HalfEdgeGraph {
    let edges: Vec<(usize, usize)> = (0..d).map(|_| (0, 1)).collect();
    build(2, &edges)
}

/// One vertex with `k` loops.
pub fn bouquet(k: usize) -> HalfEdgeGraph {
    let edges: Vec<(usize, usize)> = (0..k).map(|_| (0, 0)).collect();
    build(1, &edges)
}

/// Path on `n ≥ 2` vertices.
pub fn path(n: usize) -> HalfEdgeGraph {
    let edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    build(n, &edges)
}

/// Cycle on `n` vertices; edge `i` joins `i` and `i + 1`.
pub fn cycle(n: usize) -> HalfEdgeGraph {
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    build(n, &edges)
}

pub fn complete(n: usize) -> HalfEdgeGraph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j));
        }
    }
    build(n, &edges)
}

pub fn complete_bipartite(m: usize, n: usize) -> HalfEdgeGraph {
    let mut edges = Vec::new();
    for i in 0..m {
        for j in 0..n {
            edges.push((i, m + j));
        }
    }
    build(m + n, &edges)
}

/// Generalized Petersen graph GP(n, k): outer `n`-cycle, spokes, inner star polygon.
pub fn generalized_petersen(n: usize, k: usize) -> HalfEdgeGraph {
    let mut edges = Vec::new();
    for i in 0..n {
        edges.push((i, (i + 1) % n));
    }
    for i in 0..n {
        edges.push((i, n + i));
    }
    for i in 0..n {
        let j = (i + k) % n;
        if k * 2 != n || i < j {
            edges.push((n + i, n + j));
        }
    }
    build(2 * n, &edges)
}

pub fn petersen() -> HalfEdgeGraph {
    generalized_petersen(5, 2)
}

/// 1-skeleton of the dodecahedron, as GP(10, 2).
pub fn dodecahedron_skeleton() -> HalfEdgeGraph {
    generalized_petersen(10, 2)
}

/// Prism over an `n`-cycle, as GP(n, 1).
pub fn prism(n: usize) -> HalfEdgeGraph {
    generalized_petersen(n, 1)
}

/// Looks up a graph by name, as used on the command line: `theta:3`,
/// `petersen`, `complete:5`, `cycle:6`, `path:3`, `bouquet:2`, `dodecahedron`,
/// `prism:4`, `complete_bipartite:2,3`.
pub fn by_name(spec: &str) -> Option<HalfEdgeGraph> {
    let (name, args) = spec.split_once(':').unwrap_or((spec, ""));
    let nums: Vec<usize> = if args.is_empty() {
        Vec::new()
    } else {
        args.split(',').map(|a| a.trim().parse().ok()).collect::<Option<_>>()?
    };
    let one = |min: usize| nums.first().copied().filter(|&n| nums.len() == 1 && n >= min);
    Some(match name {
        "theta" => theta(one(1)?),
        "bouquet" => bouquet(one(1)?),
        "path" => path(one(2)?),
        "cycle" => cycle(one(1)?),
        "complete" => complete(one(2)?),
        "prism" => prism(one(3)?),
        "complete_bipartite" if nums.len() == 2 && nums[0] > 0 && nums[1] > 0 => complete_bipartite(nums[0], nums[1]),
        "petersen" if nums.is_empty() => petersen(),
        "dodecahedron" if nums.is_empty() => dodecahedron_skeleton(),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let p = petersen();
        assert_eq!((p.num_vertices(), p.num_edges()), (10, 15));
        assert!(p.is_simple());
        let d = dodecahedron_skeleton();
        assert_eq!((d.num_vertices(), d.num_edges(), d.regular_valence()), (20, 30, Some(3)));
        assert_eq!(complete(5).num_edges(), 10);
        assert_eq!(theta(4).regular_valence(), Some(4));
    }

    #[test]
    fn names() {
        assert_eq!(by_name("theta:3"), Some(theta(3)));
        assert_eq!(by_name("complete_bipartite:2,2"), Some(complete_bipartite(2, 2)));
        assert!(by_name("theta").is_none());
        assert!(by_name("nonsense").is_none());
    }
}
