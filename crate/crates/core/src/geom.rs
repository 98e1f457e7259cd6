//! Upper-half-space embeddings of the prisms, matrix generators, maximal
//! cusp data, and prism volumes.
//!
//! The embedding places the ideal vertex at infinity, the compact
//! quadrilateral face on the unit hemisphere, and the non-compact triangular
//! face on a vertical plane (the imaginary axis when a3 = 2, re z = -1/2 when
//! a3 = 3). The compact triangular face lies on a hemisphere of radius r
//! centered at s + it, with (s, t) linear in r and r solving a quadratic.
//! Face reflections compose to the rotation generators: each generator is
//! R_D followed by the reflection in its other face.

use num_complex::Complex64;
use thiserror::Error;

use crate::catalog::PrismSignature;
use crate::perm::{relators, Gen};
use crate::quad::{integrate, QuadError};

#[derive(Debug, Error)]
pub enum GeomError {
    #[error("embedding implemented for a3 in {{2,3}}, signature has a3 = {0}")]
    UnsupportedA3(u32),
    #[error("no admissible positive root for the hemisphere radius")]
    NoPositiveRoot,
    #[error("cusp volume implemented for (3,3,3)-cusped signatures with a3 = 2 and r <= 1")]
    CuspVolumeUnsupported,
    #[error("prism volume implemented for signatures (3,3,2,3,3,4,*,*,*) with compact quad on the unit hemisphere (the O333_1..3 family)")]
    UnsupportedSignature,
    #[error(transparent)]
    Quadrature(#[from] QuadError),
}

/// A 2x2 complex matrix acting as a Moebius transformation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 {
        a: Complex64::new(1.0, 0.0),
        b: Complex64::new(0.0, 0.0),
        c: Complex64::new(0.0, 0.0),
        d: Complex64::new(1.0, 0.0),
    };

    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inv(&self) -> Mat2 {
        let det = self.det();
        Mat2 {
            a: self.d / det,
            b: -self.b / det,
            c: -self.c / det,
            d: self.a / det,
        }
    }

    /// Entrywise conjugate.
    pub fn conj(&self) -> Mat2 {
        Mat2 {
            a: self.a.conj(),
            b: self.b.conj(),
            c: self.c.conj(),
            d: self.d.conj(),
        }
    }

    /// Scales to determinant one.
    pub fn normalized(&self) -> Mat2 {
        let s = self.det().sqrt();
        Mat2 {
            a: self.a / s,
            b: self.b / s,
            c: self.c / s,
            d: self.d / s,
        }
    }

    pub fn pow(&self, e: i64) -> Mat2 {
        let base = if e < 0 { self.inv() } else { *self };
        let mut k = e.unsigned_abs();
        let mut acc = Mat2::IDENTITY;
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq);
            }
            sq = sq.mul(&sq);
            k >>= 1;
        }
        acc
    }

    /// Max-entry distance from plus or minus the identity, after
    /// normalization; zero for the identity of PSL(2, C).
    pub fn dist_to_identity(&self) -> f64 {
        let m = self.normalized();
        let dist = |sign: f64| -> f64 {
            [
                m.a - sign * Complex64::new(1.0, 0.0),
                m.b,
                m.c,
                m.d - sign * Complex64::new(1.0, 0.0),
            ]
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
        };
        dist(1.0).min(dist(-1.0))
    }
}

/// Hemisphere parameters and matrix generators of an embedded prism.
#[derive(Debug, Clone)]
pub struct EmbeddingGeometry {
    pub a3: u32,
    /// Vertex of the triangular face toward the a1 edge (i y1, or z1).
    pub v1: Complex64,
    /// Vertex toward the a2 edge (i y2, or z2).
    pub v2: Complex64,
    pub s: f64,
    pub t: f64,
    pub r: f64,
    /// Largest residual of the three defining equations at the solution.
    pub constraint_residual: f64,
    /// M1..M4: reflection in face 0 composed with the reflections in faces
    /// 1, D, 2, 3 respectively.
    pub m: [Mat2; 4],
    /// Determinant-normalized generator images rho(x), rho(y), rho(z), rho(w).
    rho: [Mat2; 4],
}

impl EmbeddingGeometry {
    pub fn rho(&self, g: Gen) -> &Mat2 {
        &self.rho[g.index()]
    }
}

fn theta(sig: &PrismSignature, edge: usize) -> f64 {
    std::f64::consts::PI / sig.entry(edge) as f64
}

/// Anti-Moebius matrix of the reflection in the vertical plane over the line
/// through `p` at angle `phi` to the x-axis.
fn line_reflection(p: Complex64, phi: f64) -> Mat2 {
    let e = Complex64::from_polar(1.0, 2.0 * phi);
    Mat2::new(e, p - e * p.conj(), Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0))
}

/// Computes the embedding and the matrix generators.
pub fn embed(sig: &PrismSignature) -> Result<EmbeddingGeometry, GeomError> {
    let a3 = sig.entry(2);
    if a3 != 2 && a3 != 3 {
        return Err(GeomError::UnsupportedA3(a3));
    }
    let (th1, th2) = (theta(sig, 0), theta(sig, 1));
    let (th4, th6) = (theta(sig, 3), theta(sig, 5));
    let (th7, th8, th9) = (theta(sig, 6), theta(sig, 7), theta(sig, 8));

    let (v1, v2) = if a3 == 2 {
        (
            Complex64::new(0.0, th4.cos() / th1.sin()),
            Complex64::new(0.0, -th6.cos() / th2.sin()),
        )
    } else {
        (
            Complex64::new(-0.5, th4.cos() / th1.sin() + 0.5 / th1.tan()),
            Complex64::new(-0.5, -(th6.cos() / th2.sin() + 0.5 / th2.tan())),
        )
    };

    // (s, t) = (sa r + sb, ta r + tb) from the distance equations to the two
    // slanted vertical planes, then r from the tangency with the unit
    // hemisphere: s^2 + t^2 = 1 + r^2 + 2 r cos(theta9).
    let det = -(th1 + th2).sin();
    let sa = (th8.cos() * th1.sin() + th7.cos() * th2.sin()) / det;
    let sb = -(th6.cos() * th1.sin() + th4.cos() * th2.sin()) / det;
    let ta = (th2.cos() * th7.cos() - th1.cos() * th8.cos()) / det;
    let tb = (th1.cos() * th6.cos() - th2.cos() * th4.cos()) / det;

    let qa = sa * sa + ta * ta - 1.0;
    let qb = 2.0 * sa * sb + 2.0 * ta * tb - 2.0 * th9.cos();
    let qc = sb * sb + tb * tb - 1.0;
    let r = solve_radius(qa, qb, qc)?;
    let s = sa * r + sb;
    let t = ta * r + tb;

    let res6 = (s * s + t * t - (1.0 + r * r + 2.0 * r * th9.cos())).abs();
    let res4 = (-s * th1.cos() - t * th1.sin() + th4.cos() - r * th7.cos()).abs();
    let res5 = (-s * th2.cos() + t * th2.sin() + th6.cos() - r * th8.cos()).abs();
    let constraint_residual = res6.max(res4).max(res5);

    // Face reflections as anti-Moebius matrices.
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let a0 = if a3 == 2 {
        Mat2::new(-one, zero, zero, one)
    } else {
        Mat2::new(-one, -one, zero, one)
    };
    let a1m = Mat2::new(zero, one, one, zero);
    let ad = line_reflection(v1, th1 - std::f64::consts::FRAC_PI_2);
    let a2m = line_reflection(v2, std::f64::consts::FRAC_PI_2 - th2);
    let center = Complex64::new(s, t);
    let a3m = Mat2::new(
        center,
        Complex64::new(r * r - (s * s + t * t), 0.0),
        one,
        -center.conj(),
    );

    // The composition of reflections R_i o R_j acts as the Moebius map
    // A_i conj(A_j).
    let rot = |ai: &Mat2, aj: &Mat2| ai.mul(&aj.conj()).normalized();
    let m = [
        rot(&a0, &a1m),
        rot(&a0, &ad),
        rot(&a0, &a2m),
        rot(&a0, &a3m),
    ];
    let rho = [
        rot(&ad, &a0),
        rot(&ad, &a1m),
        rot(&ad, &a2m),
        rot(&ad, &a3m),
    ];

    Ok(EmbeddingGeometry {
        a3,
        v1,
        v2,
        s,
        t,
        r,
        constraint_residual,
        m,
        rho,
    })
}

fn solve_radius(a: f64, b: f64, c: f64) -> Result<f64, GeomError> {
    let eps = 1e-12;
    let mut roots = Vec::new();
    if a.abs() < eps {
        if b.abs() < eps {
            return Err(GeomError::NoPositiveRoot);
        }
        roots.push(-c / b);
    } else {
        let disc = b * b - 4.0 * a * c;
        if disc < 0.0 {
            return Err(GeomError::NoPositiveRoot);
        }
        let sq = disc.sqrt();
        roots.push((-b + sq) / (2.0 * a));
        roots.push((-b - sq) / (2.0 * a));
    }
    let positive: Vec<f64> = roots.into_iter().filter(|&r| r > eps).collect();
    match positive.len() {
        1 => Ok(positive[0]),
        2 => {
            // Prefer the root placing the small hemisphere inside the cusp
            // horoball; ambiguity is an error rather than a guess.
            let small: Vec<f64> = positive.iter().copied().filter(|&r| r < 1.0).collect();
            if small.len() == 1 {
                Ok(small[0])
            } else {
                Err(GeomError::NoPositiveRoot)
            }
        }
        _ => Err(GeomError::NoPositiveRoot),
    }
}

/// Evaluates each relator in the matrix images and returns the largest
/// distance of the normalized product from the identity of PSL(2, C).
pub fn verify_matrix_rep(geom: &EmbeddingGeometry, sig: &PrismSignature) -> f64 {
    let mut worst: f64 = 0.0;
    for rel in relators(sig) {
        let mut base = Mat2::IDENTITY;
        for &(g, e) in rel.base.syllables() {
            base = base.mul(&geom.rho(g).pow(e));
        }
        let prod = base.pow(rel.exponent as i64);
        worst = worst.max(prod.dist_to_identity());
    }
    worst
}

#[derive(Debug, Clone, Copy)]
pub struct MaximalCusp {
    /// Height of the maximal horoball at infinity: max{1, r}.
    pub height: f64,
    pub volume: Option<f64>,
}

/// Maximal-cusp data. The volume is computed for (3,3,3)-cusped signatures
/// with a3 = 2 and r <= 1, where the cross-section triangle is equilateral
/// with vertices at heights y1 and y2 on the boundary line.
pub fn maximal_cusp(sig: &PrismSignature, geom: &EmbeddingGeometry) -> MaximalCusp {
    MaximalCusp {
        height: geom.r.max(1.0),
        volume: cusp_volume(sig, geom).ok(),
    }
}

pub fn cusp_volume(sig: &PrismSignature, geom: &EmbeddingGeometry) -> Result<f64, GeomError> {
    if sig.cusp_type() != [3, 3, 3] || geom.a3 != 2 || geom.r > 1.0 {
        return Err(GeomError::CuspVolumeUnsupported);
    }
    let y1 = geom.v1.im;
    let y2 = geom.v2.im;
    Ok((y1 - y2) * (y1 - y2) * 3f64.sqrt() / 8.0)
}

/// The four region integrals, the section abscissas, and the total volume.
#[derive(Debug, Clone)]
pub struct VolumeResult {
    pub x_l: f64,
    pub x_u: f64,
    pub regions: [f64; 4],
    pub total: f64,
    pub est_error: f64,
}

const ENDPOINT_INSET: f64 = 1e-13;

/// Volume of the embedded prism by four single-variable integrals. Supported
/// for the (3,3,2,3,3,4,*,*,*) signatures whose compact quadrilateral face
/// lies on the unit hemisphere, i.e. O333_1, O333_2, O333_3.
pub fn prism_volume(
    sig: &PrismSignature,
    geom: &EmbeddingGeometry,
    tol: f64,
) -> Result<VolumeResult, GeomError> {
    let a = sig.tuple();
    let supported = a[..6] == [3, 3, 2, 3, 3, 4]
        && [[2, 2, 2], [2, 2, 3], [2, 3, 2]].contains(&[a[6], a[7], a[8]]);
    if !supported {
        return Err(GeomError::UnsupportedSignature);
    }

    let s3 = 3f64.sqrt();
    let y_l = move |x: f64| x / s3 - (2.0f64 / 3.0).sqrt();
    let y_u = move |x: f64| -x / s3 + 1.0 / s3;
    let (xc, yc, rc) = (geom.s, geom.t, geom.r);
    // Chord over the edge between the unit and small hemispheres.
    let slope = -xc / yc;
    let intercept = (1.0 - rc * rc + xc * xc + yc * yc) / (2.0 * yc);
    let ell = move |x: f64| slope * x + intercept;

    let x_l = (intercept + (2.0f64 / 3.0).sqrt()) / (1.0 / s3 - slope);
    let x_u = (1.0 / s3 - intercept) / (slope + 1.0 / s3);
    let apex = (1.0 + 2f64.sqrt()) / 2.0;

    let over = |x0: f64, y0: f64, r0: f64, f: Box<dyn Fn(f64) -> f64>, g: Box<dyn Fn(f64) -> f64>| {
        move |x: f64| {
            let rho = (r0 * r0 - (x - x0) * (x - x0)).sqrt();
            let gv = g(x) - y0;
            let fv = f(x) - y0;
            ((rho + gv) * (rho - fv) / ((rho - gv) * (rho + fv))).ln() / (4.0 * rho)
        }
    };

    let region_tol = tol / 4.0;
    let run = |x0, y0, r0, f: Box<dyn Fn(f64) -> f64>, g: Box<dyn Fn(f64) -> f64>, lo: f64, hi: f64| {
        integrate(
            over(x0, y0, r0, f, g),
            lo + ENDPOINT_INSET,
            hi - ENDPOINT_INSET,
            region_tol,
        )
    };

    let (v1, e1) = run(0.0, 0.0, 1.0, Box::new(y_l), Box::new(y_u), 0.0, x_l)?;
    let (v2, e2) = run(0.0, 0.0, 1.0, Box::new(ell), Box::new(y_u), x_l, x_u)?;
    let (v3, e3) = run(xc, yc, rc, Box::new(y_l), Box::new(ell), x_l, x_u)?;
    let (v4, e4) = run(xc, yc, rc, Box::new(y_l), Box::new(y_u), x_u, apex)?;

    Ok(VolumeResult {
        x_l,
        x_u,
        regions: [v1, v2, v3, v4],
        total: v1 + v2 + v3 + v4,
        est_error: e1 + e2 + e3 + e4,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lookup;

    #[test]
    fn embedding_constants_for_o333_family() {
        let g1 = embed(&lookup("O333_1", None).unwrap()).unwrap();
        assert!((g1.r - (2f64.sqrt() / 3.0).sqrt()).abs() < 1e-12);
        assert!(g1.constraint_residual < 1e-12);

        let g2 = embed(&lookup("O333_2", None).unwrap()).unwrap();
        let r2 = 0.5 * (-1.0 + (1.0 + 4.0 * 2f64.sqrt() / 3.0).sqrt());
        assert!((g2.r - r2).abs() < 1e-12);
        assert!((g2.s - (1.0 + 2f64.sqrt()) / 2.0).abs() < 1e-12);
        assert!((g2.t - (1.0 - 2f64.sqrt()) / (2.0 * 3f64.sqrt())).abs() < 1e-12);
        assert!((g2.r - 0.349355356).abs() < 1e-9);

        let g3 = embed(&lookup("O333_3", None).unwrap()).unwrap();
        assert!((g3.s - 1.0486436547687).abs() < 1e-10);
        assert!((g3.t - -0.028084427175087).abs() < 1e-10);
        assert!((g3.r - 0.31692625283566).abs() < 1e-10);
    }

    #[test]
    fn case1_matrices_have_the_documented_shape() {
        let sig = lookup("O333_2", None).unwrap();
        let g = embed(&sig).unwrap();
        // M1 = [[0,-1],[1,0]] up to sign.
        let m1 = g.m[0];
        assert!(m1.a.norm() < 1e-12 && m1.d.norm() < 1e-12);
        assert!((m1.b + m1.c).norm() < 1e-12);
        // M2 is upper triangular with diagonal e^{-i theta1}, e^{i theta1}.
        let m2 = g.m[1];
        assert!(m2.c.norm() < 1e-12);
        let th1 = std::f64::consts::PI / 3.0;
        let diag = Complex64::from_polar(1.0, -th1);
        assert!((m2.a - diag).norm() < 1e-12 || (m2.a + diag).norm() < 1e-12);
    }

    #[test]
    fn relator_residuals_for_the_333_table() {
        for k in 1..=22 {
            let sig = lookup(&format!("O333_{k}"), None).unwrap();
            let geom = embed(&sig).unwrap();
            let res = verify_matrix_rep(&geom, &sig);
            assert!(res < 1e-9, "O333_{k}: residual {res:e}");
        }
    }

    #[test]
    fn maximal_cusp_values() {
        let sig = lookup("O333_2", None).unwrap();
        let geom = embed(&sig).unwrap();
        let cusp = maximal_cusp(&sig, &geom);
        assert_eq!(cusp.height, 1.0);
        let expected = (3.0 + 2.0 * 2f64.sqrt()) / (8.0 * 3f64.sqrt());
        assert!((cusp.volume.unwrap() - expected).abs() < 1e-12);
        assert!((expected - 0.4206304962).abs() < 1e-10);

        let sig1 = lookup("O333_1", None).unwrap();
        let geom1 = embed(&sig1).unwrap();
        let cusp1 = maximal_cusp(&sig1, &geom1);
        assert!((cusp1.volume.unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn cusp_volume_unsupported_for_236() {
        let sig = lookup("O236_1", None).unwrap();
        let geom = embed(&sig).unwrap();
        assert!(matches!(
            cusp_volume(&sig, &geom),
            Err(GeomError::CuspVolumeUnsupported)
        ));
    }

    #[test]
    fn section_abscissas_match_reported_values() {
        let sig1 = lookup("O333_1", None).unwrap();
        let g1 = embed(&sig1).unwrap();
        let v1 = prism_volume(&sig1, &g1, 1e-9).unwrap();
        assert!((v1.x_l - 0.79289321881345).abs() < 1e-10);
        assert!((v1.x_u - 0.83770871866842).abs() < 1e-10);
        // X_l1 = (3 - sqrt 2)/2 exactly.
        assert!((v1.x_l - (3.0 - 2f64.sqrt()) / 2.0).abs() < 1e-13);

        let sig2 = lookup("O333_2", None).unwrap();
        let g2 = embed(&sig2).unwrap();
        let v2 = prism_volume(&sig2, &g2, 1e-9).unwrap();
        assert!((v2.x_l - 0.94637894091280).abs() < 1e-10);
        assert!((v2.x_u - 0.97458817776402).abs() < 1e-10);

        let sig3 = lookup("O333_3", None).unwrap();
        let g3 = embed(&sig3).unwrap();
        let v3 = prism_volume(&sig3, &g3, 1e-9).unwrap();
        assert!((v3.x_l - v2.x_l).abs() < 1e-12, "X_l3 = X_l2 exactly");
        assert!((v3.x_u - 0.95431912485788).abs() < 1e-10);
    }

    #[test]
    fn volume_unsupported_outside_family() {
        let sig = lookup("O333_7", None).unwrap();
        let geom = embed(&sig).unwrap();
        assert!(matches!(
            prism_volume(&sig, &geom, 1e-9),
            Err(GeomError::UnsupportedSignature)
        ));
    }
}
