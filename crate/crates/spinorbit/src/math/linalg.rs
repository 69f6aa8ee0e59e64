//! Dense complex 2x2 and 4x4 matrices.
//!
//! The dimensions are fixed by the physics (spin space and spin-orbit space),
//! so the matrices are plain stack arrays with hand-written products. The 2x2
//! singular value decomposition is fully deterministic: singular values sorted
//! descending, eigenvector phases canonicalized, so downstream synthesis is
//! reproducible bit-for-bit.

use super::{c, cr, C64, ONE, ZERO};

/// Complex 2x2 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[C64; 2]; 2]);

/// Complex 4x4 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat4(pub [[C64; 4]; 4]);

impl Mat2 {
    pub fn zero() -> Self {
        Mat2([[ZERO; 2]; 2])
    }

    pub fn identity() -> Self {
        Mat2([[ONE, ZERO], [ZERO, ONE]])
    }

    pub fn from_rows(rows: [[C64; 2]; 2]) -> Self {
        Mat2(rows)
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> C64 {
        self.0[i][j]
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        let mut out = Mat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                let mut s = ZERO;
                for k in 0..2 {
                    s += self.0[i][k] * rhs.0[k][j];
                }
                out.0[i][j] = s;
            }
        }
        out
    }

    pub fn add(&self, rhs: &Mat2) -> Mat2 {
        let mut out = *self;
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] += rhs.0[i][j];
            }
        }
        out
    }

    pub fn sub(&self, rhs: &Mat2) -> Mat2 {
        let mut out = *self;
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] -= rhs.0[i][j];
            }
        }
        out
    }

    pub fn scale(&self, s: C64) -> Mat2 {
        let mut out = *self;
        for row in out.0.iter_mut() {
            for e in row.iter_mut() {
                *e *= s;
            }
        }
        out
    }

    pub fn adjoint(&self) -> Mat2 {
        let mut out = Mat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = self.0[j][i].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> Mat2 {
        let mut out = Mat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = self.0[j][i];
            }
        }
        out
    }

    pub fn det(&self) -> C64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|e| e.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// || M M^dag - I ||_F, zero for a unitary matrix.
    pub fn unitarity_residual(&self) -> f64 {
        self.mul(&self.adjoint()).sub(&Mat2::identity()).frobenius_norm()
    }

    /// Nearest unitary matrix (polar factor), via Newton iteration
    /// X <- (X + X^{-dag}) / 2. Converges quadratically for well-conditioned
    /// near-unitary input.
    pub fn polar_unitary(&self) -> Mat2 {
        let mut x = *self;
        for _ in 0..30 {
            let inv = x.inverse();
            let xd = inv.adjoint();
            let next = x.add(&xd).scale(cr(0.5));
            let delta = next.sub(&x).frobenius_norm();
            x = next;
            if delta < 1e-15 {
                break;
            }
        }
        x
    }

    pub fn inverse(&self) -> Mat2 {
        let d = self.det();
        Mat2([
            [self.0[1][1] / d, -self.0[0][1] / d],
            [-self.0[1][0] / d, self.0[0][0] / d],
        ])
    }

    /// Deterministic singular value decomposition `A = P diag(s) Q^dag`.
    ///
    /// Returned singular values are sorted descending. For a repeated singular
    /// value the right factor is pinned to the identity; otherwise eigenvector
    /// phases are fixed by making the largest-magnitude component real and
    /// positive.
    pub fn svd(&self) -> (Mat2, [f64; 2], Mat2) {
        let a = self;
        // Hermitian 2x2: H = A^dag A
        let h = a.adjoint().mul(a);
        let h00 = h.0[0][0].re;
        let h11 = h.0[1][1].re;
        let h01 = h.0[0][1];
        let mean = 0.5 * (h00 + h11);
        let half_diff = 0.5 * (h00 - h11);
        let disc = (half_diff * half_diff + h01.norm_sqr()).sqrt();
        let l0 = (mean + disc).max(0.0); // descending
        let l1 = (mean - disc).max(0.0);
        let s = [l0.sqrt(), l1.sqrt()];

        // Degenerate spectrum: H = lambda I, any orthonormal basis works; pin Q = I.
        let q = if disc <= 1e-14 * mean.max(1.0) {
            Mat2::identity()
        } else {
            // Eigenvector for l0: (h01, l0 - h00) or (l0 - h11, conj(h01)),
            // whichever is better conditioned.
            let v0 = if h01.norm() > 1e-300 {
                [h01, cr(l0 - h00)]
            } else if h00 >= h11 {
                [ONE, ZERO]
            } else {
                [ZERO, ONE]
            };
            let n = (v0[0].norm_sqr() + v0[1].norm_sqr()).sqrt();
            let mut q0 = [v0[0] / n, v0[1] / n];
            q0 = canonical_phase2(q0);
            // Second column: orthogonal complement with canonical phase.
            let q1 = canonical_phase2([-q0[1].conj(), q0[0].conj()]);
            Mat2([[q0[0], q1[0]], [q0[1], q1[1]]])
        };

        // Left factor columns p_i = A q_i / s_i, completed canonically when
        // a singular value vanishes.
        let mut pcols: [[C64; 2]; 2] = [[ZERO; 2]; 2];
        for i in 0..2 {
            if s[i] > 1e-12 {
                for r in 0..2 {
                    pcols[i][r] = (a.0[r][0] * q.0[0][i] + a.0[r][1] * q.0[1][i]) / s[i];
                }
            }
        }
        if s[0] <= 1e-12 {
            pcols[0] = [ONE, ZERO];
            pcols[1] = [ZERO, ONE];
        } else if s[1] <= 1e-12 {
            pcols[1] = canonical_phase2([-pcols[0][1].conj(), pcols[0][0].conj()]);
        }
        let p = Mat2([[pcols[0][0], pcols[1][0]], [pcols[0][1], pcols[1][1]]]);
        (p, s, q)
    }
}

/// Multiply the vector by a unit phase so its largest-magnitude entry is real
/// and positive (first entry wins ties).
fn canonical_phase2(v: [C64; 2]) -> [C64; 2] {
    let pick = if v[0].norm() >= v[1].norm() { v[0] } else { v[1] };
    if pick.norm() < 1e-300 {
        return v;
    }
    let phase = pick.conj() / pick.norm();
    [v[0] * phase, v[1] * phase]
}

impl Mat4 {
    pub fn zero() -> Self {
        Mat4([[ZERO; 4]; 4])
    }

    pub fn identity() -> Self {
        let mut m = Mat4::zero();
        for i in 0..4 {
            m.0[i][i] = ONE;
        }
        m
    }

    pub fn from_rows(rows: [[C64; 4]; 4]) -> Self {
        Mat4(rows)
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> C64 {
        self.0[i][j]
    }

    pub fn mul(&self, rhs: &Mat4) -> Mat4 {
        let mut out = Mat4::zero();
        for i in 0..4 {
            for j in 0..4 {
                let mut s = ZERO;
                for k in 0..4 {
                    s += self.0[i][k] * rhs.0[k][j];
                }
                out.0[i][j] = s;
            }
        }
        out
    }

    pub fn add(&self, rhs: &Mat4) -> Mat4 {
        let mut out = *self;
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] += rhs.0[i][j];
            }
        }
        out
    }

    pub fn sub(&self, rhs: &Mat4) -> Mat4 {
        let mut out = *self;
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] -= rhs.0[i][j];
            }
        }
        out
    }

    pub fn scale(&self, s: C64) -> Mat4 {
        let mut out = *self;
        for row in out.0.iter_mut() {
            for e in row.iter_mut() {
                *e *= s;
            }
        }
        out
    }

    pub fn adjoint(&self) -> Mat4 {
        let mut out = Mat4::zero();
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] = self.0[j][i].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> Mat4 {
        let mut out = Mat4::zero();
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] = self.0[j][i];
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..4).map(|i| self.0[i][i]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|e| e.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn unitarity_residual(&self) -> f64 {
        self.mul(&self.adjoint()).sub(&Mat4::identity()).frobenius_norm()
    }

    /// Apply to a column vector.
    pub fn apply(&self, v: &[C64; 4]) -> [C64; 4] {
        let mut out = [ZERO; 4];
        for i in 0..4 {
            for k in 0..4 {
                out[i] += self.0[i][k] * v[k];
            }
        }
        out
    }

    /// Assemble from four 2x2 blocks `[[a, b], [c, d]]`.
    pub fn from_blocks(a: &Mat2, b: &Mat2, cm: &Mat2, d: &Mat2) -> Mat4 {
        let mut m = Mat4::zero();
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] = a.0[i][j];
                m.0[i][j + 2] = b.0[i][j];
                m.0[i + 2][j] = cm.0[i][j];
                m.0[i + 2][j + 2] = d.0[i][j];
            }
        }
        m
    }

    /// Split into the four 2x2 blocks `(a, b, c, d)`.
    pub fn blocks(&self) -> (Mat2, Mat2, Mat2, Mat2) {
        let mut a = Mat2::zero();
        let mut b = Mat2::zero();
        let mut cm = Mat2::zero();
        let mut d = Mat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                a.0[i][j] = self.0[i][j];
                b.0[i][j] = self.0[i][j + 2];
                cm.0[i][j] = self.0[i + 2][j];
                d.0[i][j] = self.0[i + 2][j + 2];
            }
        }
        (a, b, cm, d)
    }

    /// Kronecker product of two 2x2 matrices.
    pub fn kron(a: &Mat2, b: &Mat2) -> Mat4 {
        let mut m = Mat4::zero();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        m.0[2 * i + k][2 * j + l] = a.0[i][j] * b.0[k][l];
                    }
                }
            }
        }
        m
    }

    /// Nearest unitary matrix (polar factor) by Newton iteration.
    pub fn polar_unitary(&self) -> Mat4 {
        let mut x = *self;
        for _ in 0..40 {
            let inv = x.inverse();
            let next = x.add(&inv.adjoint()).scale(cr(0.5));
            let delta = next.sub(&x).frobenius_norm();
            x = next;
            if delta < 1e-15 {
                break;
            }
        }
        x
    }

    /// Gauss-Jordan inverse with partial pivoting.
    pub fn inverse(&self) -> Mat4 {
        let mut a = self.0;
        let mut inv = Mat4::identity().0;
        for col in 0..4 {
            let mut piv = col;
            for r in (col + 1)..4 {
                if a[r][col].norm() > a[piv][col].norm() {
                    piv = r;
                }
            }
            a.swap(col, piv);
            inv.swap(col, piv);
            let diag = a[col][col];
            for j in 0..4 {
                a[col][j] /= diag;
                inv[col][j] /= diag;
            }
            for r in 0..4 {
                if r != col {
                    let f = a[r][col];
                    for j in 0..4 {
                        let acj = a[col][j];
                        let icj = inv[col][j];
                        a[r][j] -= f * acj;
                        inv[r][j] -= f * icj;
                    }
                }
            }
        }
        Mat4(inv)
    }
}

/// Pauli matrices in the circular-polarization basis (|+1>, |-1>).
pub fn sigma_x() -> Mat2 {
    Mat2([[ZERO, ONE], [ONE, ZERO]])
}

pub fn sigma_y() -> Mat2 {
    Mat2([[ZERO, c(0.0, -1.0)], [c(0.0, 1.0), ZERO]])
}

pub fn sigma_z() -> Mat2 {
    Mat2([[ONE, ZERO], [ZERO, cr(-1.0)]])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn approx(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn mat2_inverse_and_polar() {
        let m = Mat2([[c(0.8, 0.1), c(0.1, -0.2)], [c(-0.05, 0.3), c(0.9, 0.0)]]);
        let prod = m.mul(&m.inverse());
        assert!(prod.sub(&Mat2::identity()).frobenius_norm() < 1e-12);
        let u = m.polar_unitary();
        assert!(u.unitarity_residual() < 1e-12);
    }

    #[test]
    fn svd_reconstructs_and_orders() {
        let a = Mat2([[c(0.3, 0.7), c(-0.2, 0.1)], [c(0.5, -0.4), c(0.9, 0.2)]]);
        let (p, s, q) = a.svd();
        assert!(s[0] >= s[1]);
        assert!(p.unitarity_residual() < 1e-12);
        assert!(q.unitarity_residual() < 1e-12);
        let sig = Mat2([[cr(s[0]), ZERO], [ZERO, cr(s[1])]]);
        let back = p.mul(&sig).mul(&q.adjoint());
        assert!(back.sub(&a).frobenius_norm() < 1e-12);
    }

    #[test]
    fn svd_of_unitary_is_ones() {
        let u = sigma_y();
        let (_, s, _) = u.svd();
        assert!(approx(s[0], 1.0, 1e-13) && approx(s[1], 1.0, 1e-13));
    }

    #[test]
    fn svd_of_zero() {
        let (p, s, q) = Mat2::zero().svd();
        assert!(s[0] == 0.0 && s[1] == 0.0);
        assert!(p.unitarity_residual() < 1e-12);
        assert!(q.unitarity_residual() < 1e-12);
    }

    #[test]
    fn mat4_inverse() {
        let m = Mat4::kron(&sigma_y(), &Mat2([[c(0.9, 0.1), c(0.2, 0.0)], [ZERO, c(1.1, -0.2)]]));
        let prod = m.mul(&m.inverse());
        assert!(prod.sub(&Mat4::identity()).frobenius_norm() < 1e-11);
    }

    #[test]
    fn kron_blocks_roundtrip() {
        let a = sigma_x();
        let b = sigma_z();
        let k = Mat4::kron(&a, &b);
        let (bl_a, bl_b, bl_c, bl_d) = k.blocks();
        let re = Mat4::from_blocks(&bl_a, &bl_b, &bl_c, &bl_d);
        assert!(re.sub(&k).frobenius_norm() == 0.0);
    }
}
