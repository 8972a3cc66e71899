//! OFF and JSON serialisation of vertex sets.

use num_traits::ToPrimitive;
use serde_json::json;

use super::{HPolytope, Incidence, VertexSet};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// `{"dim": n, "vertices": [["p/q", ...], ...]}`
pub fn vertices_to_json(v: &VertexSet) -> serde_json::Value {
    json!({
        "dim": v.ambient_dim(),
        "vertices": v.to_pq_rows(),
    })
}

/// Geomview OFF mesh of a full-dimensional 3-polytope. Coordinates are
/// written as decimals; faces are oriented counter-clockwise seen from outside.
pub fn vertices_to_off(p: &HPolytope) -> Result<String> {
    if p.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            got: p.dim(),
        });
    }
    let inc = Incidence::of(p)?;
    if inc.affine_dim != 3 {
        return Err(Error::LowerDimensional {
            affine_dim: inc.affine_dim,
            ambient: 3,
            what: "OFF export needs a solid".into(),
        });
    }
    let pts: Vec<[f64; 3]> = inc
        .vertices
        .points()
        .iter()
        .map(|q| [f(&q[0]), f(&q[1]), f(&q[2])])
        .collect();
    let centre = mean(pts.iter().copied());

    let mut out = String::from("OFF\n");
    out.push_str(&format!("{} {} 0\n", pts.len(), inc.facets.len()));
    for q in &pts {
        out.push_str(&format!("{} {} {}\n", q[0], q[1], q[2]));
    }
    for facet in &inc.facets {
        let ring = order_face(&pts, facet, centre);
        let idx: Vec<String> = ring.iter().map(|i| i.to_string()).collect();
        out.push_str(&format!("{} {}\n", ring.len(), idx.join(" ")));
    }
    Ok(out)
}

fn f(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

fn mean(it: impl Iterator<Item = [f64; 3]>) -> [f64; 3] {
    let mut s = [0.0; 3];
    let mut n = 0.0;
    for p in it {
        for k in 0..3 {
            s[k] += p[k];
        }
        n += 1.0;
    }
    [s[0] / n, s[1] / n, s[2] / n]
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Cyclic order of a facet's vertices, counter-clockwise about the outward normal.
fn order_face(pts: &[[f64; 3]], facet: &[usize], solid_centre: [f64; 3]) -> Vec<usize> {
    let c = mean(facet.iter().map(|&i| pts[i]));
    let u = sub(pts[facet[0]], c);
    // any second in-plane direction not parallel to u
    let mut normal = [0.0; 3];
    for &i in &facet[1..] {
        let nrm = cross(u, sub(pts[i], c));
        if dot(nrm, nrm) > 1e-18 {
            normal = nrm;
            break;
        }
    }
    if dot(normal, sub(c, solid_centre)) < 0.0 {
        normal = [-normal[0], -normal[1], -normal[2]];
    }
    let v = cross(normal, u);
    let mut ring: Vec<(f64, usize)> = facet
        .iter()
        .map(|&i| {
            let d = sub(pts[i], c);
            (dot(d, v).atan2(dot(d, u)), i)
        })
        .collect();
    ring.sort_by(|a, b| a.0.total_cmp(&b.0));
    ring.into_iter().map(|(_, i)| i).collect()
}
