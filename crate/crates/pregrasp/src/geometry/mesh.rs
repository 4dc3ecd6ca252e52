//! Triangle mesh construction, queries, surface sampling, and OFF I/O.

use std::collections::HashMap;
use std::path::Path as FsPath;

use nalgebra::{Point3, Vector3};
use rand::Rng;

use super::{BarycentricCoord, GeometryError, PointCloud, TriangleMesh};

impl TriangleMesh {
    /// Build a mesh from vertices and triangles; normals are computed from the
    /// winding order, then flipped globally if the enclosed volume is negative.
    pub fn new(
        vertices: Vec<Point3<f64>>,
        triangles: Vec<[usize; 3]>,
    ) -> Result<Self, GeometryError> {
        let n = vertices.len();
        for (i, t) in triangles.iter().enumerate() {
            if t.iter().any(|&v| v >= n) {
                return Err(GeometryError::InvalidMesh(format!(
                    "triangle {i} references a vertex outside 0..{n}"
                )));
            }
            if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
                return Err(GeometryError::InvalidMesh(format!(
                    "triangle {i} is degenerate: {t:?}"
                )));
            }
        }
        let mut mesh = Self {
            vertices,
            triangles,
            normals: Vec::new(),
        };
        mesh.recompute_normals()?;
        Ok(mesh)
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn triangle_vertices(&self, t: usize) -> [Point3<f64>; 3] {
        let [a, b, c] = self.triangles[t];
        [self.vertices[a], self.vertices[b], self.vertices[c]]
    }

    pub fn triangle_area(&self, t: usize) -> f64 {
        let [a, b, c] = self.triangle_vertices(t);
        0.5 * (b - a).cross(&(c - a)).norm()
    }

    pub fn triangle_centroid(&self, t: usize) -> Point3<f64> {
        let [a, b, c] = self.triangle_vertices(t);
        Point3::from((a.coords + b.coords + c.coords) / 3.0)
    }

    /// Signed volume via the divergence theorem; positive for outward winding.
    pub fn signed_volume(&self) -> f64 {
        self.triangles
            .iter()
            .map(|&[a, b, c]| {
                let (a, b, c) = (
                    self.vertices[a].coords,
                    self.vertices[b].coords,
                    self.vertices[c].coords,
                );
                a.dot(&b.cross(&c)) / 6.0
            })
            .sum()
    }

    /// Recompute per-triangle normals from winding; flips all windings if the
    /// enclosed volume is negative so that normals face outward.
    pub fn recompute_normals(&mut self) -> Result<(), GeometryError> {
        if self.signed_volume() < 0.0 {
            for t in &mut self.triangles {
                t.swap(1, 2);
            }
        }
        self.normals = self
            .triangles
            .iter()
            .map(|&[a, b, c]| {
                let n = (self.vertices[b] - self.vertices[a])
                    .cross(&(self.vertices[c] - self.vertices[a]));
                let len = n.norm();
                if len < 1e-15 {
                    return Err(GeometryError::InvalidMesh(
                        "zero-area triangle has no normal".into(),
                    ));
                }
                Ok(n / len)
            })
            .collect::<Result<_, _>>()?;
        Ok(())
    }

    /// Edge-to-face incidence map; key is the sorted vertex pair.
    pub fn edge_faces(&self) -> HashMap<(usize, usize), Vec<usize>> {
        let mut map: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (f, t) in self.triangles.iter().enumerate() {
            for k in 0..3 {
                let (a, b) = (t[k], t[(k + 1) % 3]);
                let key = (a.min(b), a.max(b));
                map.entry(key).or_default().push(f);
            }
        }
        map
    }

    /// Every edge must be shared by exactly two triangles with opposite
    /// orientation.
    pub fn check_closed_manifold(&self) -> Result<(), GeometryError> {
        let mut map: HashMap<(usize, usize), i32> = HashMap::new();
        for t in &self.triangles {
            for k in 0..3 {
                let (a, b) = (t[k], t[(k + 1) % 3]);
                let key = (a.min(b), a.max(b));
                let dir = if a < b { 1 } else { -1 };
                *map.entry(key).or_insert(0) += dir;
            }
        }
        for (edge, balance) in &map {
            if *balance != 0 {
                return Err(GeometryError::NonManifold(format!(
                    "edge {edge:?} is not shared by two opposite-oriented triangles"
                )));
            }
        }
        let counts = self.edge_faces();
        for (edge, faces) in &counts {
            if faces.len() != 2 {
                return Err(GeometryError::NonManifold(format!(
                    "edge {edge:?} bounds {} triangles",
                    faces.len()
                )));
            }
        }
        Ok(())
    }

    /// `V - E + F` summed over the whole mesh (2 per closed component).
    pub fn euler_characteristic(&self) -> i64 {
        let mut used = vec![false; self.vertices.len()];
        for t in &self.triangles {
            for &v in t {
                used[v] = true;
            }
        }
        let v = used.iter().filter(|u| **u).count() as i64;
        let e = self.edge_faces().len() as i64;
        let f = self.triangles.len() as i64;
        v - e + f
    }

    pub fn bounding_box(&self) -> (Point3<f64>, Point3<f64>) {
        bounding_box_of(&self.vertices)
    }

    pub fn bbox_diagonal(&self) -> f64 {
        let (lo, hi) = self.bounding_box();
        (hi - lo).norm()
    }

    /// Point and triangle normal for a barycentric coordinate.
    pub fn bary_to_point(
        &self,
        b: &BarycentricCoord,
    ) -> Result<(Point3<f64>, Vector3<f64>), GeometryError> {
        if b.triangle_index >= self.triangles.len() {
            return Err(GeometryError::BadTriangleIndex {
                index: b.triangle_index,
                count: self.triangles.len(),
            });
        }
        if !b.is_valid() {
            return Err(GeometryError::BadBarycentric {
                alpha: b.alpha,
                beta: b.beta,
            });
        }
        let [v0, v1, v2] = self.triangle_vertices(b.triangle_index);
        let p = v0.coords * b.alpha + v1.coords * b.beta + v2.coords * (1.0 - b.alpha - b.beta);
        Ok((Point3::from(p), self.normals[b.triangle_index]))
    }

    /// Closest point on the mesh surface: triangle index, barycentric
    /// coordinates, and distance.
    pub fn project_point(&self, p: &Point3<f64>) -> (BarycentricCoord, f64) {
        let mut best = (BarycentricCoord::new(0, 1.0, 0.0), f64::INFINITY);
        for (t, _) in self.triangles.iter().enumerate() {
            let [a, b, c] = self.triangle_vertices(t);
            let (q, alpha, beta) = closest_point_on_triangle(p, &a, &b, &c);
            let d = (q - p).norm();
            if d < best.1 {
                best = (BarycentricCoord::new(t, alpha, beta), d);
            }
        }
        best
    }

    /// Distance from `p` to the mesh surface.
    pub fn surface_distance(&self, p: &Point3<f64>) -> f64 {
        self.project_point(p).1
    }
}

/// Closest point on triangle `(a, b, c)`, returned with barycentric
/// coordinates matching `alpha*a + beta*b + (1-alpha-beta)*c`.
pub fn closest_point_on_triangle(
    p: &Point3<f64>,
    a: &Point3<f64>,
    b: &Point3<f64>,
    c: &Point3<f64>,
) -> (Point3<f64>, f64, f64) {
    // Ericson, Real-Time Collision Detection, §5.1.5.
    let ab = b - a;
    let ac = c - a;
    let ap = p - a;
    let d1 = ab.dot(&ap);
    let d2 = ac.dot(&ap);
    if d1 <= 0.0 && d2 <= 0.0 {
        return (*a, 1.0, 0.0);
    }
    let bp = p - b;
    let d3 = ab.dot(&bp);
    let d4 = ac.dot(&bp);
    if d3 >= 0.0 && d4 <= d3 {
        return (*b, 0.0, 1.0);
    }
    let vc = d1 * d4 - d3 * d2;
    if vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0 {
        let v = d1 / (d1 - d3);
        return (a + ab * v, 1.0 - v, v);
    }
    let cp = p - c;
    let d5 = ab.dot(&cp);
    let d6 = ac.dot(&cp);
    if d6 >= 0.0 && d5 <= d6 {
        return (*c, 0.0, 0.0);
    }
    let vb = d5 * d2 - d1 * d6;
    if vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0 {
        let w = d2 / (d2 - d6);
        return (a + ac * w, 1.0 - w, 0.0);
    }
    let va = d3 * d6 - d5 * d4;
    if va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0 {
        let w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
        return (b + (c - b) * w, 0.0, 1.0 - w);
    }
    let denom = 1.0 / (va + vb + vc);
    let v = vb * denom;
    let w = vc * denom;
    (a + ab * v + ac * w, 1.0 - v - w, v)
}

pub fn bounding_box_of(points: &[Point3<f64>]) -> (Point3<f64>, Point3<f64>) {
    let mut lo = Point3::new(f64::INFINITY, f64::INFINITY, f64::INFINITY);
    let mut hi = Point3::new(f64::NEG_INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in points {
        for k in 0..3 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    (lo, hi)
}

/// Area-weighted uniform surface sampling; normals taken from the sampled
/// triangle. Deterministic for a fixed seed.
pub fn sample_surface(mesh: &TriangleMesh, count: usize, seed: u64) -> PointCloud {
    let mut rng = crate::rng::rng_for(seed, &[mesh.triangle_count() as u64]);
    let areas: Vec<f64> = (0..mesh.triangle_count())
        .map(|t| mesh.triangle_area(t))
        .collect();
    let total: f64 = areas.iter().sum();
    let mut cumulative = Vec::with_capacity(areas.len());
    let mut acc = 0.0;
    for a in &areas {
        acc += a / total;
        cumulative.push(acc);
    }
    let mut points = Vec::with_capacity(count);
    let mut normals = Vec::with_capacity(count);
    for _ in 0..count {
        let u: f64 = rng.gen();
        let t = cumulative.partition_point(|c| *c < u).min(areas.len() - 1);
        // Uniform barycentric draw via square-root trick.
        let (r1, r2): (f64, f64) = (rng.gen(), rng.gen());
        let s = r1.sqrt();
        let alpha = 1.0 - s;
        let beta = s * (1.0 - r2);
        let (p, n) = mesh
            .bary_to_point(&BarycentricCoord::new(t, alpha, beta))
            .expect("sampled coordinates are valid");
        points.push(p);
        normals.push(n);
    }
    PointCloud { points, normals }
}

/// Parse an ASCII OFF document.
pub fn parse_off(text: &str) -> Result<TriangleMesh, GeometryError> {
    let mut tokens = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(|l| l.split_whitespace())
        .peekable();
    let header = tokens
        .next()
        .ok_or_else(|| GeometryError::OffParse("empty file".into()))?;
    if header != "OFF" {
        return Err(GeometryError::OffParse(format!(
            "expected OFF header, found {header:?}"
        )));
    }
    let mut next_usize = |what: &str| -> Result<usize, GeometryError> {
        tokens
            .next()
            .ok_or_else(|| GeometryError::OffParse(format!("missing {what}")))?
            .parse()
            .map_err(|e| GeometryError::OffParse(format!("bad {what}: {e}")))
    };
    let nv = next_usize("vertex count")?;
    let nf = next_usize("face count")?;
    let _ne = next_usize("edge count")?;
    let mut tokens = tokens;
    let mut next_f64 = |what: &str| -> Result<f64, GeometryError> {
        tokens
            .next()
            .ok_or_else(|| GeometryError::OffParse(format!("missing {what}")))?
            .parse()
            .map_err(|e| GeometryError::OffParse(format!("bad {what}: {e}")))
    };
    let mut vertices = Vec::with_capacity(nv);
    for _ in 0..nv {
        let x = next_f64("vertex coordinate")?;
        let y = next_f64("vertex coordinate")?;
        let z = next_f64("vertex coordinate")?;
        vertices.push(Point3::new(x, y, z));
    }
    let mut triangles = Vec::with_capacity(nf);
    for _ in 0..nf {
        let arity = next_f64("face arity")? as usize;
        if arity != 3 {
            return Err(GeometryError::OffParse(format!(
                "only triangle faces supported, found {arity}-gon"
            )));
        }
        let a = next_f64("face index")? as usize;
        let b = next_f64("face index")? as usize;
        let c = next_f64("face index")? as usize;
        triangles.push([a, b, c]);
    }
    TriangleMesh::new(vertices, triangles)
}

pub fn load_off(path: &FsPath) -> Result<TriangleMesh, GeometryError> {
    let text = std::fs::read_to_string(path)?;
    parse_off(&text)
}

pub fn write_off(mesh: &TriangleMesh) -> String {
    let mut out = String::from("OFF\n");
    out.push_str(&format!(
        "{} {} 0\n",
        mesh.vertices.len(),
        mesh.triangles.len()
    ));
    for v in &mesh.vertices {
        out.push_str(&format!("{:.9} {:.9} {:.9}\n", v.x, v.y, v.z));
    }
    for t in &mesh.triangles {
        out.push_str(&format!("3 {} {} {}\n", t[0], t[1], t[2]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::shapes;
    use approx::assert_relative_eq;

    #[test]
    fn cube_mesh_is_closed_manifold() {
        let m = shapes::box_mesh(0.5, 0.5, 0.5);
        m.check_closed_manifold().unwrap();
        assert_eq!(m.euler_characteristic(), 2);
        assert_relative_eq!(m.signed_volume(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn bary_vertex_and_centroid() {
        let m = shapes::box_mesh(0.5, 0.5, 0.5);
        let (p, _) = m
            .bary_to_point(&BarycentricCoord::new(0, 1.0, 0.0))
            .unwrap();
        let v0 = m.vertices[m.triangles[0][0]];
        assert_relative_eq!((p - v0).norm(), 0.0, epsilon = 1e-15);

        let (c, _) = m.bary_to_point(&BarycentricCoord::centroid(0)).unwrap();
        assert_relative_eq!((c - m.triangle_centroid(0)).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn bary_point_lies_in_triangle_plane() {
        let m = shapes::icosphere(1.0, 1);
        let mut rng = crate::rng::rng_for(3, &[]);
        for _ in 0..200 {
            let t = rng.gen_range(0..m.triangle_count());
            let a: f64 = rng.gen_range(0.0..1.0);
            let b: f64 = rng.gen_range(0.0..(1.0 - a));
            let (p, n) = m.bary_to_point(&BarycentricCoord::new(t, a, b)).unwrap();
            let [v0, _, _] = m.triangle_vertices(t);
            assert!((p - v0).dot(&n).abs() < 1e-12);
        }
    }

    #[test]
    fn bad_triangle_index_rejected() {
        let m = shapes::box_mesh(0.5, 0.5, 0.5);
        assert!(m
            .bary_to_point(&BarycentricCoord::new(99, 0.2, 0.2))
            .is_err());
        assert!(m
            .bary_to_point(&BarycentricCoord::new(0, 0.9, 0.9))
            .is_err());
    }

    #[test]
    fn projection_recovers_bary_point() {
        // Interior barycentric points project back onto the same triangle.
        let m = shapes::icosphere(1.0, 0);
        let mut rng = crate::rng::rng_for(11, &[]);
        for _ in 0..100 {
            let t = rng.gen_range(0..m.triangle_count());
            let a: f64 = rng.gen_range(0.05..0.9);
            let b: f64 = rng.gen_range(0.05..(0.95 - a));
            let (p, _) = m.bary_to_point(&BarycentricCoord::new(t, a, b)).unwrap();
            let (bc, d) = m.project_point(&p);
            assert!(d < 1e-9);
            assert_eq!(bc.triangle_index, t);
            assert_relative_eq!(bc.alpha, a, epsilon = 1e-9);
            assert_relative_eq!(bc.beta, b, epsilon = 1e-9);
        }
    }

    #[test]
    fn off_roundtrip() {
        let m = shapes::box_mesh(0.1, 0.2, 0.3);
        let text = write_off(&m);
        let m2 = parse_off(&text).unwrap();
        assert_eq!(m.triangles, m2.triangles);
        for (a, b) in m.vertices.iter().zip(&m2.vertices) {
            assert_relative_eq!((a - b).norm(), 0.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn surface_sampling_is_on_surface_and_deterministic() {
        let m = shapes::box_mesh(0.05, 0.05, 0.05);
        let c1 = sample_surface(&m, 256, 9);
        let c2 = sample_surface(&m, 256, 9);
        assert_eq!(c1, c2);
        for p in &c1.points {
            assert!(m.surface_distance(p) < 1e-12);
        }
    }
}
