//! Projective planes PG(2, q) over prime fields and their depth-2 circuit.

use super::{Family, GenError, InstanceRecord};
use crate::circuit::Builder;

pub fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectivePlane {
    pub q: u64,
    /// Normalized homogeneous coordinates, in lexicographic order.
    pub points: Vec<[u64; 3]>,
    /// Point ids on each line, ascending; lines use the same coordinates.
    pub lines: Vec<Vec<usize>>,
}

/// Nonzero triples whose first nonzero coordinate is 1, lexicographic.
fn normalized_triples(q: u64) -> Vec<[u64; 3]> {
    let mut out = Vec::new();
    for x in 0..q {
        for y in 0..q {
            for z in 0..q {
                let first = [x, y, z].into_iter().find(|&c| c != 0);
                if first == Some(1) {
                    out.push([x, y, z]);
                }
            }
        }
    }
    out
}

impl ProjectivePlane {
    pub fn new(q: u64) -> Result<ProjectivePlane, GenError> {
        if !is_prime(q) {
            return Err(GenError::NotPrime(q));
        }
        let points = normalized_triples(q);
        let lines = points
            .iter()
            .map(|l| (0..points.len()).filter(|&p| dot(l, &points[p], q) == 0).collect())
            .collect();
        Ok(ProjectivePlane { q, points, lines })
    }

    pub fn order(&self) -> usize {
        self.points.len()
    }

    pub fn is_collinear(&self, a: usize, b: usize, c: usize) -> bool {
        let (p, r, s) = (self.points[a], self.points[b], self.points[c]);
        let q = self.q as i64;
        let m = |v: [u64; 3]| v.map(|x| x as i64);
        let (p, r, s) = (m(p), m(r), m(s));
        let det = p[0] * (r[1] * s[2] - r[2] * s[1]) - p[1] * (r[0] * s[2] - r[2] * s[0]) + p[2] * (r[0] * s[1] - r[1] * s[0]);
        det.rem_euclid(q) == 0
    }

    /// Checks the incidence axioms; returns the first violation.
    pub fn verify(&self) -> Result<(), String> {
        let n = self.order();
        let q = self.q as usize;
        if n != q * q + q + 1 || self.lines.len() != n {
            return Err(format!("expected {} points and lines", q * q + q + 1));
        }
        let on = |p: usize, l: usize| self.lines[l].binary_search(&p).is_ok();
        for (l, pts) in self.lines.iter().enumerate() {
            if pts.len() != q + 1 {
                return Err(format!("line {l} has {} points", pts.len()));
            }
        }
        for p in 0..n {
            let deg = (0..n).filter(|&l| on(p, l)).count();
            if deg != q + 1 {
                return Err(format!("point {p} lies on {deg} lines"));
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                let common = (0..n).filter(|&l| on(a, l) && on(b, l)).count();
                if common != 1 {
                    return Err(format!("points {a} and {b} share {common} lines"));
                }
                let meet = self.lines[a].iter().filter(|p| self.lines[b].binary_search(p).is_ok()).count();
                if meet != 1 {
                    return Err(format!("lines {a} and {b} meet in {meet} points"));
                }
            }
        }
        let frame = self.frame().ok_or("no four points in general position")?;
        let [a, b, c, d] = frame;
        if [(a, b, c), (a, b, d), (a, c, d), (b, c, d)].iter().any(|&(x, y, z)| self.is_collinear(x, y, z)) {
            return Err("frame has three collinear points".into());
        }
        Ok(())
    }

    /// Four points, no three collinear.
    pub fn frame(&self) -> Option<[usize; 4]> {
        let find = |v: [u64; 3]| self.points.iter().position(|&p| p == v);
        Some([find([0, 0, 1])?, find([0, 1, 0])?, find([1, 0, 0])?, find([1, 1, 1])?])
    }
}

fn dot(a: &[u64; 3], b: &[u64; 3], q: u64) -> u64 {
    (a[0] * b[0] + a[1] * b[1] + a[2] * b[2]) % q
}

/// `OR over lines of AND over the line's points`: `q²+q+1` inputs and
/// `q²+q+2` gates.
pub fn gen_projective_plane(q: u64) -> Result<(ProjectivePlane, InstanceRecord), GenError> {
    let plane = ProjectivePlane::new(q)?;
    plane.verify().map_err(GenError::BadParams)?;
    let n = plane.order();
    let mut b = Builder::new((0..n).map(|i| format!("x{i}")).collect());
    let lines = plane
        .lines
        .iter()
        .map(|pts| {
            let kids = pts.iter().map(|&p| b.input(p)).collect();
            b.and(kids)
        })
        .collect();
    let out = b.or(lines);
    let c = b.finish(format!("projplane_{q}"), out)?;
    let rec = InstanceRecord::new(c, Family::ProjPlane, &[("q", q), ("n", n as u64)], "n^(3/8)", (n as f64).powf(0.375));
    Ok((plane, rec))
}
