//! Kets, basis orderings, state vectors and operator lifts for the
//! four-dimensional spin-orbit space.
//!
//! Two index orderings of the same four kets are used throughout:
//!
//! - **Logical**: `(|00>, |01>, |10>, |11>)` =
//!   `(|+1,+2>, |-1,-2>, |-1,+2>, |+1,-2>)`
//! - **Natural**: `(|0,0>, |0,1>, |1,0>, |1,1>)` =
//!   `(|+1,+2>, |+1,-2>, |-1,+2>, |-1,-2>)`, first bit = spin,
//!   second bit = OAM.
//!
//! All matrices act on amplitude **column vectors**, `a' = M a`; the ket-row
//! notation `(kets) -> (kets) M` found in the optics literature produces
//! exactly the same entry placement, so no transpose is involved anywhere.

use crate::math::linalg::{Mat2, Mat4};
use crate::math::{cr, C64, ZERO};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Circular polarization handedness, s = +1 or s = -1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Spin {
    #[serde(rename = "+1")]
    Plus,
    #[serde(rename = "-1")]
    Minus,
}

impl Spin {
    pub fn value(self) -> i32 {
        match self {
            Spin::Plus => 1,
            Spin::Minus => -1,
        }
    }

    pub fn flip(self) -> Spin {
        match self {
            Spin::Plus => Spin::Minus,
            Spin::Minus => Spin::Plus,
        }
    }

    pub fn from_value(v: i32) -> Result<Spin> {
        match v {
            1 => Ok(Spin::Plus),
            -1 => Ok(Spin::Minus),
            other => Err(Error::InvalidParam(format!("spin must be +1 or -1, got {other}"))),
        }
    }

    /// Row/column index in the circular basis (|+1>, |-1>).
    pub fn index(self) -> usize {
        match self {
            Spin::Plus => 0,
            Spin::Minus => 1,
        }
    }
}

/// A single spin-orbit ket |s, m>. The OAM value is an unrestricted integer so
/// that leakage states such as m = +-6 live in the same type as the 4D
/// subspace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SOKet {
    pub spin: Spin,
    pub oam: i32,
}

impl SOKet {
    pub fn new(spin: Spin, oam: i32) -> Self {
        SOKet { spin, oam }
    }
}

/// Which of the two 4D index orderings a vector or matrix is expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisKind {
    Logical,
    Natural,
}

impl BasisKind {
    /// The four kets in this ordering.
    pub fn kets(self) -> [SOKet; 4] {
        match self {
            BasisKind::Logical => [
                SOKet::new(Spin::Plus, 2),
                SOKet::new(Spin::Minus, -2),
                SOKet::new(Spin::Minus, 2),
                SOKet::new(Spin::Plus, -2),
            ],
            BasisKind::Natural => [
                SOKet::new(Spin::Plus, 2),
                SOKet::new(Spin::Plus, -2),
                SOKet::new(Spin::Minus, 2),
                SOKet::new(Spin::Minus, -2),
            ],
        }
    }

    /// Index of a ket in this ordering, if it lies in the 4D subspace.
    pub fn index_of(self, ket: SOKet) -> Option<usize> {
        self.kets().iter().position(|k| *k == ket)
    }
}

/// Permutation matrix taking amplitude vectors in `from` ordering to `to`
/// ordering. Between Logical and Natural this is the transposition of indices
/// 1 and 3 (self-inverse).
pub fn basis_permutation(from: BasisKind, to: BasisKind) -> Mat4 {
    let mut p = Mat4::zero();
    let from_kets = from.kets();
    for (j, ket) in from_kets.iter().enumerate() {
        let i = to.index_of(*ket).expect("both orderings span the same kets");
        p.0[i][j] = cr(1.0);
    }
    p
}

const UNITARY_ACCEPT: f64 = 1e-12;
const UNITARY_REPAIR: f64 = 1e-6;

/// A validated 2x2 unitary (spin-space operator).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary2(Mat2);

impl Unitary2 {
    /// Accepts matrices with unitarity residual <= 1e-12 as-is, renormalizes
    /// (polar projection) residuals up to 1e-6, rejects anything worse.
    pub fn new(m: Mat2) -> Result<Self> {
        let r = m.unitarity_residual();
        if r <= UNITARY_ACCEPT {
            Ok(Unitary2(m))
        } else if r <= UNITARY_REPAIR {
            Ok(Unitary2(m.polar_unitary()))
        } else {
            Err(Error::NotUnitary { residual: r, limit: UNITARY_REPAIR })
        }
    }

    pub fn identity() -> Self {
        Unitary2(Mat2::identity())
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub fn mul(&self, rhs: &Unitary2) -> Unitary2 {
        Unitary2(self.0.mul(&rhs.0))
    }

    pub fn adjoint(&self) -> Unitary2 {
        Unitary2(self.0.adjoint())
    }

    pub fn scale_phase(&self, phase: C64) -> Result<Unitary2> {
        Unitary2::new(self.0.scale(phase))
    }
}

/// A validated 4x4 unitary tagged with the ordering its indices refer to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary4 {
    m: Mat4,
    basis: BasisKind,
}

impl Unitary4 {
    pub fn new(m: Mat4, basis: BasisKind) -> Result<Self> {
        let r = m.unitarity_residual();
        if r <= UNITARY_ACCEPT {
            Ok(Unitary4 { m, basis })
        } else if r <= UNITARY_REPAIR {
            Ok(Unitary4 { m: m.polar_unitary(), basis })
        } else {
            Err(Error::NotUnitary { residual: r, limit: UNITARY_REPAIR })
        }
    }

    pub fn identity(basis: BasisKind) -> Self {
        Unitary4 { m: Mat4::identity(), basis }
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.m
    }

    pub fn basis(&self) -> BasisKind {
        self.basis
    }

    /// Composition; both operands must carry the same basis tag.
    pub fn mul(&self, rhs: &Unitary4) -> Result<Unitary4> {
        if self.basis != rhs.basis {
            return Err(Error::BasisMismatch { left: self.basis, right: rhs.basis });
        }
        Ok(Unitary4 { m: self.m.mul(&rhs.m), basis: self.basis })
    }

    pub fn adjoint(&self) -> Unitary4 {
        Unitary4 { m: self.m.adjoint(), basis: self.basis }
    }

    /// Re-express in the other ordering by permutation conjugation.
    pub fn to_basis(&self, target: BasisKind) -> Unitary4 {
        if target == self.basis {
            return *self;
        }
        let p = basis_permutation(self.basis, target);
        let pt = basis_permutation(target, self.basis);
        Unitary4 { m: p.mul(&self.m).mul(&pt), basis: target }
    }

    pub fn apply(&self, v: &SOVector4) -> Result<SOVector4> {
        if v.basis() != self.basis {
            return Err(Error::BasisMismatch { left: self.basis, right: v.basis() });
        }
        SOVector4::new(self.m.apply(v.amps()), self.basis)
    }
}

const NORM_ACCEPT: f64 = 1e-12;
const NORM_REPAIR: f64 = 1e-6;

/// A normalized 4-component amplitude vector tagged with its ordering.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SOVector4 {
    amps: [C64; 4],
    basis: BasisKind,
}

impl SOVector4 {
    pub fn new(amps: [C64; 4], basis: BasisKind) -> Result<Self> {
        let norm_sq: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        let dev = (norm_sq.sqrt() - 1.0).abs();
        if dev <= NORM_ACCEPT {
            Ok(SOVector4 { amps, basis })
        } else if dev <= NORM_REPAIR {
            let n = norm_sq.sqrt();
            let mut a = amps;
            for x in a.iter_mut() {
                *x /= n;
            }
            Ok(SOVector4 { amps: a, basis })
        } else {
            Err(Error::NotNormalized { deviation: dev, limit: NORM_REPAIR })
        }
    }

    /// The i-th basis ket of the given ordering as a state vector.
    pub fn basis_state(i: usize, basis: BasisKind) -> Self {
        let mut amps = [ZERO; 4];
        amps[i] = cr(1.0);
        SOVector4 { amps, basis }
    }

    pub fn amps(&self) -> &[C64; 4] {
        &self.amps
    }

    pub fn basis(&self) -> BasisKind {
        self.basis
    }

    pub fn to_basis(&self, target: BasisKind) -> SOVector4 {
        if target == self.basis {
            return *self;
        }
        let p = basis_permutation(self.basis, target);
        SOVector4 { amps: p.apply(&self.amps), basis: target }
    }

    pub fn inner(&self, other: &SOVector4) -> C64 {
        let o = other.to_basis(self.basis);
        self.amps
            .iter()
            .zip(o.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

/// |<psi|phi>|, converting orderings automatically.
pub fn state_fidelity(psi: &SOVector4, phi: &SOVector4) -> f64 {
    psi.inner(phi).norm()
}

/// min over phase of ||U - e^{i phi} V||_F; zero iff the two matrices agree up
/// to a global phase. Closed form: sqrt(||U||^2 + ||V||^2 - 2 |tr(U^dag V)|).
pub fn distance_up_to_global_phase(u: &Unitary4, v: &Unitary4) -> Result<f64> {
    if u.basis() != v.basis() {
        return Err(Error::BasisMismatch { left: u.basis(), right: v.basis() });
    }
    Ok(mat4_phase_distance(u.matrix(), v.matrix()))
}

/// Same as [`distance_up_to_global_phase`] on raw matrices.
pub fn mat4_phase_distance(u: &Mat4, v: &Mat4) -> f64 {
    let t = u.adjoint().mul(v).trace().norm();
    let d2 = u.frobenius_norm().powi(2) + v.frobenius_norm().powi(2) - 2.0 * t;
    d2.max(0.0).sqrt()
}

/// The phase e^{i phi} minimizing ||U - e^{i phi} V||_F (unit modulus unless
/// tr(U^dag V) vanishes).
pub fn aligning_phase(u: &Mat4, v: &Mat4) -> C64 {
    let t = u.adjoint().mul(v).trace();
    if t.norm() < 1e-300 {
        cr(1.0)
    } else {
        (t / t.norm()).conj()
    }
}

/// Lift a spin-space operator to the 4D space.
///
/// In the Natural ordering this is `V (x) I`; the Logical form follows by
/// permutation conjugation and lands on the sparsity pattern with rows/columns
/// (1,3) and (2,4) coupled.
pub fn lift_spin(v: &Unitary2, basis: BasisKind) -> Unitary4 {
    let m = v.matrix();
    let natural = Mat4::kron(m, &Mat2::identity());
    finish_lift(natural, basis)
}

/// Lift an OAM-space operator (basis m = +2 first, m = -2 second) to the 4D
/// space: `I (x) U` in the Natural ordering.
pub fn lift_oam(u: &Unitary2, basis: BasisKind) -> Unitary4 {
    let m = u.matrix();
    let natural = Mat4::kron(&Mat2::identity(), m);
    finish_lift(natural, basis)
}

fn finish_lift(natural: Mat4, basis: BasisKind) -> Unitary4 {
    let m = match basis {
        BasisKind::Natural => natural,
        BasisKind::Logical => {
            let p = basis_permutation(BasisKind::Natural, BasisKind::Logical);
            let q = basis_permutation(BasisKind::Logical, BasisKind::Natural);
            p.mul(&natural).mul(&q)
        }
    };
    // input was unitary, permutation conjugation preserves that exactly
    Unitary4 { m, basis }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::linalg::{sigma_x, sigma_y, sigma_z};
    use crate::math::{c, ONE};

    #[test]
    fn permutation_examples() {
        // logical |00> -> natural |0,0>
        let p = basis_permutation(BasisKind::Logical, BasisKind::Natural);
        let e0 = p.apply(&[ONE, ZERO, ZERO, ZERO]);
        assert_eq!(e0, [ONE, ZERO, ZERO, ZERO]);
        // logical |01> = |-1,-2> -> natural |1,1>
        let e1 = p.apply(&[ZERO, ONE, ZERO, ZERO]);
        assert_eq!(e1, [ZERO, ZERO, ZERO, ONE]);
        // round trip is the identity
        let q = basis_permutation(BasisKind::Natural, BasisKind::Logical);
        assert!(q.mul(&p).sub(&Mat4::identity()).frobenius_norm() == 0.0);
        // from == to
        let id = basis_permutation(BasisKind::Logical, BasisKind::Logical);
        assert!(id.sub(&Mat4::identity()).frobenius_norm() == 0.0);
        // exactly one 1 per row and column
        for i in 0..4 {
            let row: f64 = (0..4).map(|j| p.at(i, j).norm()).sum();
            let col: f64 = (0..4).map(|j| p.at(j, i).norm()).sum();
            assert_eq!(row, 1.0);
            assert_eq!(col, 1.0);
        }
    }

    #[test]
    fn lift_spin_logical_pattern() {
        let v = Unitary2::new(Mat2([[c(0.6, 0.0), c(0.0, 0.8)], [c(0.0, 0.8), c(0.6, 0.0)]]))
            .unwrap();
        let l = lift_spin(&v, BasisKind::Logical);
        let m = l.matrix();
        let vm = v.matrix();
        // rows/cols (0,2) carry v as [[v11, v12],[v21, v22]], rows/cols (1,3)
        // carry it reversed
        assert_eq!(m.at(0, 0), vm.at(0, 0));
        assert_eq!(m.at(0, 2), vm.at(0, 1));
        assert_eq!(m.at(2, 0), vm.at(1, 0));
        assert_eq!(m.at(2, 2), vm.at(1, 1));
        assert_eq!(m.at(1, 1), vm.at(1, 1));
        assert_eq!(m.at(1, 3), vm.at(1, 0));
        assert_eq!(m.at(3, 1), vm.at(0, 1));
        assert_eq!(m.at(3, 3), vm.at(0, 0));
        // zero pattern
        for (i, j) in [(0, 1), (0, 3), (1, 0), (1, 2), (2, 1), (2, 3), (3, 0), (3, 2)] {
            assert_eq!(m.at(i, j), ZERO);
        }
    }

    #[test]
    fn lift_oam_logical_pattern() {
        let u = Unitary2::new(Mat2([[c(0.28, 0.96), ZERO], [ZERO, c(-0.6, 0.8)]])).unwrap();
        let l = lift_oam(&u, BasisKind::Logical);
        let m = l.matrix();
        let um = u.matrix();
        assert_eq!(m.at(0, 0), um.at(0, 0));
        assert_eq!(m.at(0, 3), um.at(0, 1));
        assert_eq!(m.at(3, 0), um.at(1, 0));
        assert_eq!(m.at(3, 3), um.at(1, 1));
        assert_eq!(m.at(1, 1), um.at(1, 1));
        assert_eq!(m.at(1, 2), um.at(1, 0));
        assert_eq!(m.at(2, 1), um.at(0, 1));
        assert_eq!(m.at(2, 2), um.at(0, 0));
    }

    #[test]
    fn natural_lift_acts_on_single_index() {
        // apply lift_spin(V, Natural) to each natural ket and compare with the
        // direct action of V on the spin label
        let v = Unitary2::new(Mat2([[c(0.36, 0.48), c(0.8, 0.0)], [c(-0.8, 0.0), c(0.36, -0.48)]]))
            .unwrap();
        let lifted = lift_spin(&v, BasisKind::Natural);
        let kets = BasisKind::Natural.kets();
        for (j, ket) in kets.iter().enumerate() {
            let out = lifted.matrix().apply(SOVector4::basis_state(j, BasisKind::Natural).amps());
            // expected: V|s> (x) |m>
            let mut expect = [ZERO; 4];
            for (i, target) in kets.iter().enumerate() {
                if target.oam == ket.oam {
                    expect[i] = v.matrix().at(target.spin.index(), ket.spin.index());
                }
            }
            for i in 0..4 {
                assert!((out[i] - expect[i]).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn lifts_are_homomorphisms_and_commute() {
        let v = Unitary2::new(sigma_y()).unwrap();
        let w = Unitary2::new(Mat2([[c(0.6, 0.0), c(0.8, 0.0)], [c(-0.8, 0.0), c(0.6, 0.0)]]))
            .unwrap();
        for basis in [BasisKind::Logical, BasisKind::Natural] {
            let lhs = lift_spin(&v, basis).mul(&lift_spin(&w, basis)).unwrap();
            let rhs = lift_spin(&v.mul(&w), basis);
            assert!(lhs.matrix().sub(rhs.matrix()).frobenius_norm() < 1e-13);
            let a = lift_spin(&v, basis).mul(&lift_oam(&w, basis)).unwrap();
            let b = lift_oam(&w, basis).mul(&lift_spin(&v, basis)).unwrap();
            assert!(a.matrix().sub(b.matrix()).frobenius_norm() < 1e-13);
        }
    }

    #[test]
    fn identity_lifts() {
        for basis in [BasisKind::Logical, BasisKind::Natural] {
            let l = lift_spin(&Unitary2::identity(), basis);
            assert!(l.matrix().sub(&Mat4::identity()).frobenius_norm() == 0.0);
            let l = lift_oam(&Unitary2::identity(), basis);
            assert!(l.matrix().sub(&Mat4::identity()).frobenius_norm() == 0.0);
        }
    }

    #[test]
    fn fidelity_examples() {
        let s = 1.0 / 2.0_f64.sqrt();
        let psi = SOVector4::new([cr(s), cr(s), ZERO, ZERO], BasisKind::Logical).unwrap();
        let phi = SOVector4::basis_state(0, BasisKind::Logical);
        assert!((state_fidelity(&psi, &phi) - s).abs() < 1e-15);
        assert!((state_fidelity(&psi, &psi) - 1.0).abs() < 1e-15);
        let orth = SOVector4::basis_state(2, BasisKind::Logical);
        assert_eq!(state_fidelity(&phi, &orth), 0.0);
    }

    #[test]
    fn fidelity_symmetric_and_phase_invariant() {
        let a = SOVector4::new([c(0.5, 0.0), c(0.0, 0.5), c(0.5, 0.0), c(0.0, 0.5)], BasisKind::Natural)
            .unwrap();
        let b = SOVector4::new([c(0.1, 0.3), c(0.2, 0.0), c(0.5, 0.5), c(0.0, 0.6083276608)], BasisKind::Natural)
            .unwrap();
        let f1 = state_fidelity(&a, &b);
        let f2 = state_fidelity(&b, &a);
        assert!((f1 - f2).abs() < 1e-15);
        let phase = c(0.0, 1.0);
        let b2 = SOVector4::new(b.amps().map(|x| x * phase), BasisKind::Natural).unwrap();
        assert!((state_fidelity(&a, &b2) - f1).abs() < 1e-15);
    }

    #[test]
    fn fidelity_across_bases() {
        // logical |01> is natural |1,1>
        let l = SOVector4::basis_state(1, BasisKind::Logical);
        let n = SOVector4::basis_state(3, BasisKind::Natural);
        assert!((state_fidelity(&l, &n) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn phase_distance_examples() {
        let u = Unitary4::identity(BasisKind::Logical);
        assert!(distance_up_to_global_phase(&u, &u).unwrap() < 1e-15);
        let neg = Unitary4::new(Mat4::identity().scale(cr(-1.0)), BasisKind::Logical).unwrap();
        assert!(distance_up_to_global_phase(&u, &neg).unwrap() < 1e-7);
        // diag(1,1,1,-1): |tr| = 2, distance = sqrt(8 - 4) = 2
        let mut d = Mat4::identity();
        d.0[3][3] = cr(-1.0);
        let v = Unitary4::new(d, BasisKind::Logical).unwrap();
        let dist = distance_up_to_global_phase(&u, &v).unwrap();
        assert!((dist - 2.0).abs() < 1e-12);
    }

    #[test]
    fn constructors_renormalize_and_reject() {
        // slightly off unitary: repaired
        let m = sigma_x().scale(cr(1.0 + 3e-7));
        let u = Unitary2::new(m).unwrap();
        assert!(u.matrix().unitarity_residual() < 1e-12);
        // far off: rejected
        assert!(Unitary2::new(sigma_z().scale(cr(1.5))).is_err());
        // state renormalization
        let v = SOVector4::new([cr(1.0 + 5e-7), ZERO, ZERO, ZERO], BasisKind::Natural).unwrap();
        assert!((v.amps()[0].norm() - 1.0).abs() < 1e-14);
        assert!(SOVector4::new([cr(0.5), ZERO, ZERO, ZERO], BasisKind::Natural).is_err());
    }
}
