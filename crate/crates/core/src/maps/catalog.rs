//! Flag-transitive oriented maps: Platonic solids, beach balls and square tori.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use super::{MapError, RotationMap};
use crate::graph::HalfEdgeGraph;

fn faces(n: usize, list: &[&[usize]]) -> RotationMap {
    let faces: Vec<Vec<usize>> = list.iter().map(|f| f.to_vec()).collect();
    RotationMap::from_oriented_faces(n, &faces).expect("catalog faces are consistent")
}

pub fn tetrahedron() -> RotationMap {
    faces(4, &[&[0, 1, 2], &[0, 2, 3], &[0, 3, 1], &[1, 3, 2]])
}

/// Vertex `i` sits at the corner with coordinates given by the bits of a Gray-code walk.
pub fn cube() -> RotationMap {
    faces(
        8,
        &[
            &[0, 3, 2, 1],
            &[4, 5, 6, 7],
            &[0, 1, 5, 4],
            &[2, 3, 7, 6],
            &[0, 4, 7, 3],
            &[1, 2, 6, 5],
        ],
    )
}

/// Vertices `+x, -x, +y, -y, +z, -z`.
pub fn octahedron() -> RotationMap {
    faces(
        6,
        &[
            &[0, 2, 4],
            &[1, 4, 2],
            &[0, 4, 3],
            &[0, 5, 2],
            &[1, 3, 4],
            &[1, 2, 5],
            &[0, 3, 5],
            &[1, 5, 3],
        ],
    )
}

/// Built from the twelve points `(0, ±1, ±φ)` and their cyclic shifts.
pub fn icosahedron() -> RotationMap {
    let phi = (1.0 + crate::math::sqrt(5.0)) / 2.0;
    let mut pts: Vec<[f64; 3]> = Vec::new();
    for s1 in [1.0, -1.0] {
        for s2 in [1.0, -1.0] {
            let base = [0.0, s1, s2 * phi];
            for shift in 0..3 {
                pts.push([base[(3 - shift) % 3], base[(4 - shift) % 3], base[(5 - shift) % 3]]);
            }
        }
    }
    let dist2 = |a: &[f64; 3], b: &[f64; 3]| (0..3).map(|i| (a[i] - b[i]) * (a[i] - b[i])).sum::<f64>();
    let adjacent = |i: usize, j: usize| crate::math::abs(dist2(&pts[i], &pts[j]) - 4.0) < 1e-9;
    let mut tris: Vec<Vec<usize>> = Vec::new();
    for a in 0..12 {
        for b in a + 1..12 {
            for c in b + 1..12 {
                if adjacent(a, b) && adjacent(b, c) && adjacent(a, c) {
                    let (x, y, z) = (&pts[a], &pts[b], &pts[c]);
                    let det = x[0] * (y[1] * z[2] - y[2] * z[1]) - x[1] * (y[0] * z[2] - y[2] * z[0])
                        + x[2] * (y[0] * z[1] - y[1] * z[0]);
                    tris.push(if det > 0.0 { vec![a, b, c] } else { vec![a, c, b] });
                }
            }
        }
    }
    RotationMap::from_oriented_faces(12, &tris).expect("icosahedron faces are consistent")
}

pub fn dodecahedron() -> RotationMap {
    icosahedron().dual()
}

/// Two vertices joined by `q` edges bounding `q` bigons: the sphere cut
/// like a beach ball. Edge `k` has dart `2k` at vertex 0 and `2k + 1` at vertex 1.
pub fn beach_ball(q: usize) -> RotationMap {
    let edges: Vec<(usize, usize)> = (0..q).map(|_| (0, 1)).collect();
    let graph = HalfEdgeGraph::from_edges(2, &edges).expect("theta graph");
    let mut next = vec![0; 2 * q];
    for k in 0..q {
        next[2 * k] = 2 * ((k + 1) % q);
        next[2 * k + 1] = 2 * ((k + q - 1) % q) + 1;
    }
    RotationMap::new(graph, next).expect("beach ball rotation")
}

/// The theta graph on `d` edges embedded in the sphere; identical to [`beach_ball`].
pub fn theta_map(d: usize) -> RotationMap {
    beach_ball(d)
}

/// The `n × n` square grid on the torus (`n ≥ 3`); vertex `(x, y)` is `y·n + x`.
pub fn torus_grid(n: usize) -> Result<RotationMap, MapError> {
    if n < 3 {
        return Err(MapError::InvalidFaces("torus grid needs n >= 3"));
    }
    let at = |x: usize, y: usize| (y % n) * n + (x % n);
    let mut list = Vec::new();
    for y in 0..n {
        for x in 0..n {
            list.push(vec![at(x, y), at(x + 1, y), at(x + 1, y + 1), at(x, y + 1)]);
        }
    }
    RotationMap::from_oriented_faces(n * n, &list)
}

/// Looks a map up by name: `tetrahedron`, `cube`, `octahedron`,
/// `dodecahedron`, `icosahedron`, `beach_ball:q`, `theta_map:d`, `torus_grid:n`.
pub fn by_name(name: &str, param: Option<usize>) -> Result<RotationMap, MapError> {
    let unknown = || MapError::UnknownName(name.to_string());
    let (base, inline) = match name.split_once(':') {
        Some((b, v)) => (b, Some(v.parse::<usize>().map_err(|_| unknown())?)),
        None => (name, None),
    };
    let param = inline.or(param);
    match (base, param) {
        ("tetrahedron", None) => Ok(tetrahedron()),
        ("cube", None) => Ok(cube()),
        ("octahedron", None) => Ok(octahedron()),
        ("dodecahedron", None) => Ok(dodecahedron()),
        ("icosahedron", None) => Ok(icosahedron()),
        ("beach_ball", Some(q)) if q >= 2 => Ok(beach_ball(q)),
        ("theta_map", Some(d)) if d >= 2 => Ok(theta_map(d)),
        ("torus_grid", Some(n)) => torus_grid(n),
        _ => Err(unknown()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::MapType;

    fn check(m: &RotationMap, p: usize, q: usize, genus: i64) {
        assert_eq!(m.map_type().unwrap(), MapType { p, q });
        assert_eq!(m.genus(), genus);
        let ft = m.flag_transitivity();
        assert!(ft.verdict, "{p},{q} not flag transitive: {} orbits", ft.orbit_count);
        assert_eq!(ft.group_order, num_bigint::BigUint::from(4 * m.graph().num_edges()));
    }

    #[test]
    fn platonic_solids() {
        check(&tetrahedron(), 3, 3, 0);
        check(&cube(), 4, 3, 0);
        check(&octahedron(), 3, 4, 0);
        check(&dodecahedron(), 5, 3, 0);
        check(&icosahedron(), 3, 5, 0);
    }

    #[test]
    fn beach_balls_and_tori() {
        for q in 2..=7 {
            check(&beach_ball(q), 2, q, 0);
        }
        let t = torus_grid(5).unwrap();
        check(&t, 4, 4, 1);
        assert_eq!(t.num_faces(), 25);
    }

    #[test]
    fn girth_matches_face_length() {
        for m in [tetrahedron(), cube(), dodecahedron(), beach_ball(4), torus_grid(5).unwrap()] {
            assert!(m.girth().unwrap().equals_face_length);
        }
        assert!(octahedron().girth().unwrap().equals_face_length);
    }

    #[test]
    fn names() {
        assert_eq!(by_name("beach_ball", Some(3)).unwrap(), beach_ball(3));
        assert_eq!(by_name("torus_grid:4", None).unwrap(), torus_grid(4).unwrap());
        assert!(matches!(by_name("klein", None), Err(MapError::UnknownName(_))));
    }
}
