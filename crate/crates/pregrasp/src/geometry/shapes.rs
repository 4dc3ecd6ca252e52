//! Procedural meshes used by tests and scene fixtures. All shapes are
//! centered on the origin with outward normals.

use nalgebra::Point3;

use super::TriangleMesh;

/// Axis-aligned box from half-extents; 12 triangles.
pub fn box_mesh(hx: f64, hy: f64, hz: f64) -> TriangleMesh {
    subdivided_box_mesh(hx, hy, hz, 1)
}

/// Axis-aligned box with each face split into an `n x n` grid; `12 n^2`
/// triangles.
pub fn subdivided_box_mesh(hx: f64, hy: f64, hz: f64, n: usize) -> TriangleMesh {
    assert!(n >= 1);
    let mut vertices: Vec<Point3<f64>> = Vec::new();
    let mut triangles: Vec<[usize; 3]> = Vec::new();
    let mut vertex_id = |vertices: &mut Vec<Point3<f64>>, p: Point3<f64>| -> usize {
        // Boxes are tiny; linear dedup keeps vertices shared across faces.
        for (i, q) in vertices.iter().enumerate() {
            if (q - p).norm() < 1e-12 {
                return i;
            }
        }
        vertices.push(p);
        vertices.len() - 1
    };
    let h = [hx, hy, hz];
    // One face per (axis, sign); u and v are the two other axes.
    for axis in 0..3 {
        for sign in [-1.0, 1.0] {
            let u = (axis + 1) % 3;
            let v = (axis + 2) % 3;
            let grid_point = |i: usize, j: usize| {
                let mut c = [0.0; 3];
                c[axis] = sign * h[axis];
                c[u] = -h[u] + 2.0 * h[u] * (i as f64) / (n as f64);
                c[v] = -h[v] + 2.0 * h[v] * (j as f64) / (n as f64);
                Point3::new(c[0], c[1], c[2])
            };
            for i in 0..n {
                for j in 0..n {
                    let p00 = vertex_id(&mut vertices, grid_point(i, j));
                    let p10 = vertex_id(&mut vertices, grid_point(i + 1, j));
                    let p01 = vertex_id(&mut vertices, grid_point(i, j + 1));
                    let p11 = vertex_id(&mut vertices, grid_point(i + 1, j + 1));
                    if sign > 0.0 {
                        triangles.push([p00, p10, p11]);
                        triangles.push([p00, p11, p01]);
                    } else {
                        triangles.push([p00, p11, p10]);
                        triangles.push([p00, p01, p11]);
                    }
                }
            }
        }
    }
    TriangleMesh::new(vertices, triangles).expect("box construction is valid")
}

/// Icosphere: regular icosahedron subdivided `subdivisions` times and
/// projected to the radius; `20 * 4^s` triangles.
pub fn icosphere(radius: f64, subdivisions: usize) -> TriangleMesh {
    let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
    let mut vertices: Vec<Point3<f64>> = [
        [-1.0, phi, 0.0],
        [1.0, phi, 0.0],
        [-1.0, -phi, 0.0],
        [1.0, -phi, 0.0],
        [0.0, -1.0, phi],
        [0.0, 1.0, phi],
        [0.0, -1.0, -phi],
        [0.0, 1.0, -phi],
        [phi, 0.0, -1.0],
        [phi, 0.0, 1.0],
        [-phi, 0.0, -1.0],
        [-phi, 0.0, 1.0],
    ]
    .iter()
    .map(|c| Point3::from(nalgebra::Vector3::new(c[0], c[1], c[2]).normalize() * radius))
    .collect();
    let mut triangles: Vec<[usize; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    for _ in 0..subdivisions {
        let mut midpoint: std::collections::HashMap<(usize, usize), usize> =
            std::collections::HashMap::new();
        let mut mid = |a: usize, b: usize, vertices: &mut Vec<Point3<f64>>| -> usize {
            let key = (a.min(b), a.max(b));
            if let Some(&m) = midpoint.get(&key) {
                return m;
            }
            let p = (vertices[a].coords + vertices[b].coords) / 2.0;
            let p = Point3::from(p.normalize() * radius);
            vertices.push(p);
            midpoint.insert(key, vertices.len() - 1);
            vertices.len() - 1
        };
        let mut next = Vec::with_capacity(triangles.len() * 4);
        for &[a, b, c] in &triangles {
            let ab = mid(a, b, &mut vertices);
            let bc = mid(b, c, &mut vertices);
            let ca = mid(c, a, &mut vertices);
            next.push([a, ab, ca]);
            next.push([b, bc, ab]);
            next.push([c, ca, bc]);
            next.push([ab, bc, ca]);
        }
        triangles = next;
    }
    TriangleMesh::new(vertices, triangles).expect("icosphere construction is valid")
}

/// Latitude/longitude sphere with `stacks` rows and `slices` columns;
/// `2 * slices * (stacks - 1)` triangles.
pub fn uv_sphere(radius: f64, stacks: usize, slices: usize) -> TriangleMesh {
    assert!(stacks >= 2 && slices >= 3);
    let mut vertices = vec![Point3::new(0.0, 0.0, radius)];
    for i in 1..stacks {
        let theta = std::f64::consts::PI * (i as f64) / (stacks as f64);
        for j in 0..slices {
            let phi = 2.0 * std::f64::consts::PI * (j as f64) / (slices as f64);
            vertices.push(Point3::new(
                radius * theta.sin() * phi.cos(),
                radius * theta.sin() * phi.sin(),
                radius * theta.cos(),
            ));
        }
    }
    vertices.push(Point3::new(0.0, 0.0, -radius));
    let south = vertices.len() - 1;
    let ring = |i: usize, j: usize| 1 + (i - 1) * slices + (j % slices);
    let mut triangles = Vec::new();
    for j in 0..slices {
        triangles.push([0, ring(1, j), ring(1, j + 1)]);
    }
    for i in 1..stacks - 1 {
        for j in 0..slices {
            let (a, b) = (ring(i, j), ring(i, j + 1));
            let (c, d) = (ring(i + 1, j), ring(i + 1, j + 1));
            triangles.push([a, c, d]);
            triangles.push([a, d, b]);
        }
    }
    for j in 0..slices {
        triangles.push([south, ring(stacks - 1, j + 1), ring(stacks - 1, j)]);
    }
    TriangleMesh::new(vertices, triangles).expect("uv sphere construction is valid")
}

/// Closed conical frustum along +z (a plate or bottle profile when
/// `r_bottom < r_top` or vice versa); `4 * segments` triangles.
pub fn frustum_mesh(r_bottom: f64, r_top: f64, height: f64, segments: usize) -> TriangleMesh {
    assert!(segments >= 3);
    let hz = height / 2.0;
    let mut vertices = Vec::new();
    for j in 0..segments {
        let phi = 2.0 * std::f64::consts::PI * (j as f64) / (segments as f64);
        vertices.push(Point3::new(r_bottom * phi.cos(), r_bottom * phi.sin(), -hz));
    }
    for j in 0..segments {
        let phi = 2.0 * std::f64::consts::PI * (j as f64) / (segments as f64);
        vertices.push(Point3::new(r_top * phi.cos(), r_top * phi.sin(), hz));
    }
    let bottom_center = vertices.len();
    vertices.push(Point3::new(0.0, 0.0, -hz));
    let top_center = vertices.len();
    vertices.push(Point3::new(0.0, 0.0, hz));
    let mut triangles = Vec::new();
    for j in 0..segments {
        let j1 = (j + 1) % segments;
        let (b0, b1) = (j, j1);
        let (t0, t1) = (segments + j, segments + j1);
        triangles.push([b0, b1, t1]);
        triangles.push([b0, t1, t0]);
        triangles.push([bottom_center, b1, b0]);
        triangles.push([top_center, t0, t1]);
    }
    TriangleMesh::new(vertices, triangles).expect("frustum construction is valid")
}

/// Cylinder along +z; `4 * segments` triangles.
pub fn cylinder_mesh(radius: f64, height: f64, segments: usize) -> TriangleMesh {
    frustum_mesh(radius, radius, height, segments)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn shapes_are_closed_and_outward() {
        for m in [
            box_mesh(0.1, 0.2, 0.3),
            subdivided_box_mesh(0.5, 0.5, 0.5, 4),
            icosphere(0.5, 1),
            uv_sphere(1.0, 21, 24),
            frustum_mesh(0.05, 0.09, 0.02, 24),
        ] {
            m.check_closed_manifold().unwrap();
            assert!(m.signed_volume() > 0.0);
            assert_eq!(m.euler_characteristic(), 2);
            for t in 0..m.triangle_count() {
                let c = m.triangle_centroid(t);
                // All these shapes are star-shaped around the origin.
                assert!(m.normals[t].dot(&c.coords) > -1e-12);
            }
        }
    }

    #[test]
    fn expected_triangle_counts() {
        assert_eq!(box_mesh(1.0, 1.0, 1.0).triangle_count(), 12);
        assert_eq!(subdivided_box_mesh(0.5, 0.5, 0.5, 4).triangle_count(), 192);
        assert_eq!(icosphere(1.0, 0).triangle_count(), 20);
        assert_eq!(uv_sphere(1.0, 21, 24).triangle_count(), 960);
    }

    #[test]
    fn box_volume_matches() {
        let m = subdivided_box_mesh(0.1, 0.2, 0.3, 3);
        assert_relative_eq!(m.signed_volume(), 8.0 * 0.1 * 0.2 * 0.3, epsilon = 1e-12);
    }
}
