//! The (right) cocycle double cross coproduct: the dual picture. An algebra
//! M with a distinguished character η and a bialgebra H, tied together by
//! four algebra maps
//!
//! ```text
//! ∇: M→H⊗M   ▼: H→H⊗M   δ: M→M⊗M   σ: H→M⊗M
//! ```
//!
//! The space M⊗H becomes a bialgebra with the tensor-product algebra
//! structure, counit η⊗ε, and the comultiplication
//!
//! ```text
//! Δ(x⊗h) = (x⁽¹⁾·h⟨1⟩^(1) ⊗ x⁽²⁾⟨-1⟩·h⟨1⟩^(2)⟨-1⟩·h⟨2⟩[0])
//!        ⊗ (x⁽²⁾⟨0⟩·h⟨1⟩^(2)⟨0⟩·h⟨2⟩[1] ⊗ h⟨3⟩)
//! ```
//!
//! exactly when conditions D1–D11 hold. Superscripts: `δ(x) = x⁽¹⁾⊗x⁽²⁾`,
//! `∇(x) = x⟨-1⟩⊗x⟨0⟩`, `▼(h) = h[0]⊗h[1]`, `σ(h) = h^(1)⊗h^(2)`.

use super::elem::Elem;
use super::{elem_eq, AlgebraTensor, BialgebraTensor, CoalgebraTensor, QuantumError};
use crate::kernel::{BasedSpace, Matrix, Rational, Tensor3};
use crate::report::{
    axis, sweep, AxiomForm, CheckOptions, CheckReport, ConditionReport, TupleOutcome, TupleSpace,
    Violation,
};
use num_traits::Zero;

/// Structure maps of a (right) cocycle double cross coproduct pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CdccData {
    /// Algebra factor with its distinguished character η.
    pub m: AlgebraTensor,
    /// Bialgebra factor.
    pub h: BialgebraTensor,
    /// ∇: M→H⊗M, `nabla[x][j][k]` meaning `∇(e_x) = Σ h_j ⊗ m_k`.
    pub nabla: Tensor3,
    /// ▼: H→H⊗M
    pub blackdown: Tensor3,
    /// δ: M→M⊗M
    pub delta: Tensor3,
    /// σ: H→M⊗M
    pub sigma: Tensor3,
}

impl CdccData {
    pub fn dims(&self) -> (usize, usize) {
        (self.m.dim(), self.h.dim())
    }

    pub fn character(&self) -> Result<&[Rational], QuantumError> {
        self.m
            .character
            .as_deref()
            .ok_or_else(|| QuantumError::MissingCharacter("M has no marked character".into()))
    }

    fn check_shapes(&self) -> Result<(), QuantumError> {
        let (dm, dh) = self.dims();
        let want = [
            ("nabla", self.nabla.dims(), (dm, dh, dm)),
            ("blackdown", self.blackdown.dims(), (dh, dh, dm)),
            ("delta", self.delta.dims(), (dm, dm, dm)),
            ("sigma", self.sigma.dims(), (dh, dm, dm)),
        ];
        for (name, got, expect) in want {
            if got != expect {
                return Err(QuantumError::ShapeMismatch(format!(
                    "{name}: {got:?}, expected {expect:?}"
                )));
            }
        }
        Ok(())
    }
}

/// Assemble the bialgebra on M⊗H: tensor-product algebra, the twisted
/// comultiplication, counit η⊗ε.
pub fn build_cdcc(d: &CdccData) -> Result<BialgebraTensor, QuantumError> {
    d.check_shapes()?;
    let eta = d.character()?.to_vec();
    let (dm, dh) = d.dims();
    let n = dm * dh;
    let space = d.m.space.tensor(&d.h.space);

    let mut mul = Tensor3::zeros(n, n, n);
    for x in 0..dm {
        for h in 0..dh {
            for x2 in 0..dm {
                for h2 in 0..dh {
                    let prod = Elem::basis(vec![dm, dm], &[x, x2])
                        .fuse(0, 1, &d.m.mul)
                        .outer(
                            &Elem::basis(vec![dh, dh], &[h, h2]).fuse(0, 1, &d.h.algebra.mul),
                        );
                    for (idx, c) in prod.iter() {
                        *mul.at_mut(x * dh + h, x2 * dh + h2, idx[0] * dh + idx[1]) += c;
                    }
                }
            }
        }
    }
    let mut unit = vec![Rational::zero(); n];
    for (a, cm) in d.m.unit.iter().enumerate() {
        for (b, chh) in d.h.algebra.unit.iter().enumerate() {
            unit[a * dh + b] = cm * chh;
        }
    }

    let mut comul = Tensor3::zeros(n, n, n);
    let mut counit = vec![Rational::zero(); n];
    for x in 0..dm {
        for h in 0..dh {
            counit[x * dh + h] = &eta[x] * &d.h.coalgebra.counit[h];
            let split = Elem::basis(vec![dm, dh], &[x, h])
                .split(0, &d.delta) // x1 x2 h
                .split(2, &d.h.coalgebra.comul) // x1 x2 h1 h2
                .split(3, &d.h.coalgebra.comul) // x1 x2 h1 h2 h3
                .split(2, &d.sigma) // x1 x2 s1 s2 h2 h3
                .split(1, &d.nabla) // x1 xh xm s1 s2 h2 h3
                .split(4, &d.nabla) // x1 xh xm s1 sh sm h2 h3
                .split(6, &d.blackdown) // x1 xh xm s1 sh sm bh bm h3
                .fuse(0, 3, &d.m.mul) // A xh xm sh sm bh bm h3
                .fuse(1, 3, &d.h.algebra.mul) // A B1 xm sm bh bm h3
                .fuse(1, 4, &d.h.algebra.mul) // A B xm sm bm h3
                .fuse(2, 3, &d.m.mul) // A B C1 bm h3
                .fuse(2, 3, &d.m.mul); // A B C h3
            for (idx, c) in split.iter() {
                *comul.at_mut(
                    x * dh + h,
                    idx[0] * dh + idx[1],
                    idx[2] * dh + idx[3],
                ) += c;
            }
        }
    }

    Ok(BialgebraTensor {
        algebra: AlgebraTensor {
            space: space.clone(),
            mul,
            unit,
            character: None,
        },
        coalgebra: CoalgebraTensor {
            space,
            comul,
            counit,
            grouplike: None,
        },
    })
}

/// Conditions D1–D10 plus D11, the algebra-morphism property of the four
/// maps (with unit normalizations). Sweedler chains up to five coactions
/// deep are expanded mechanically.
pub fn verify_cdcc_conditions(d: &CdccData, opts: &CheckOptions) -> ConditionReport {
    let mut report = CheckReport::new();
    if d.check_shapes().is_err() || d.character().is_err() {
        report.push(sweep(
            "shapes",
            AxiomForm::ProofDerived,
            None,
            &TupleSpace::uniform(vec![0], 1),
            opts,
            |t| TupleOutcome::Fails(Violation::noted(t.to_vec(), "bad shapes or no character")),
        ));
        return report;
    }
    let eta = d.character().expect("checked").to_vec();
    let (dm, dh) = d.dims();
    let ch = &d.h.coalgebra.comul;
    let eps = &d.h.coalgebra.counit;
    let mul_m = &d.m.mul;
    let mul_h = &d.h.algebra.mul;
    let one_m = d.m.unit_elem();
    let one_h = Elem::from_dense(dh, &d.h.algebra.unit);

    let m1 = TupleSpace::uniform(axis(dm), 1);
    let h1 = TupleSpace::uniform(axis(dh), 1);

    // D1: η(x1)x2 = x = x1 η(x2)
    report.push(sweep("D1", AxiomForm::ProofDerived, None, &m1, opts, |t| {
        let x = t[0] as usize;
        let split = Elem::basis(vec![dm], &[x]).split(0, &d.delta);
        let b = Elem::basis(vec![dm], &[x]);
        if split.cap(0, &eta) == b && split.cap(1, &eta) == b {
            TupleOutcome::Holds
        } else {
            TupleOutcome::Fails(Violation::noted(t.to_vec(), "δ not η-counital"))
        }
    }));

    // D2: η(h^(1))h^(2) = ε(h)1_M = h^(1)η(h^(2))
    report.push(sweep("D2", AxiomForm::ProofDerived, None, &h1, opts, |t| {
        let h = t[0] as usize;
        let split = Elem::basis(vec![dh], &[h]).split(0, &d.sigma);
        let rhs = one_m.scale(&eps[h]);
        if split.cap(0, &eta) == rhs && split.cap(1, &eta) == rhs {
            TupleOutcome::Holds
        } else {
            TupleOutcome::Fails(Violation::noted(t.to_vec(), "σ not η-counital"))
        }
    }));

    // D3: ∇ is a left H-comodule structure on M.
    report.push(sweep("D3", AxiomForm::ProofDerived, None, &m1, opts, |t| {
        let x = t[0] as usize;
        let nx = Elem::basis(vec![dm], &[x]).split(0, &d.nabla);
        let counital = nx.cap(0, eps) == Elem::basis(vec![dm], &[x]);
        let coassoc = nx.split(0, ch) == nx.split(1, &d.nabla);
        if counital && coassoc {
            TupleOutcome::Holds
        } else {
            TupleOutcome::Fails(Violation::noted(t.to_vec(), "∇ is not a coaction"))
        }
    }));

    // D4: x1 ⊗ x2(1) ⊗ x2(2) = x11·(x2⟨-1⟩)^(1) ⊗ x12·(x2⟨-1⟩)^(2) ⊗ x2⟨0⟩
    report.push(sweep("D4", AxiomForm::ProofDerived, None, &m1, opts, |t| {
        let x = t[0] as usize;
        let lhs = Elem::basis(vec![dm], &[x])
            .split(0, &d.delta)
            .split(1, &d.delta);
        let rhs = Elem::basis(vec![dm], &[x])
            .split(0, &d.delta) // x1 x2
            .split(1, &d.nabla) // x1 nh nm
            .split(1, &d.sigma) // x1 s1 s2 nm
            .split(0, &d.delta) // x11 x12 s1 s2 nm
            .fuse(0, 2, mul_m) // A x12 s2 nm
            .fuse(1, 2, mul_m); // A B nm
        elem_eq(t, &lhs, &rhs)
    }));

    // D5: x⟨-1⟩ ⊗ x⟨0⟩(1) ⊗ x⟨0⟩(2) = x1⟨-1⟩·x2⟨-1⟩[0] ⊗ x1⟨0⟩·x2⟨-1⟩[1] ⊗ x2⟨0⟩
    report.push(sweep("D5", AxiomForm::ProofDerived, None, &m1, opts, |t| {
        let x = t[0] as usize;
        let lhs = Elem::basis(vec![dm], &[x])
            .split(0, &d.nabla)
            .split(1, &d.delta);
        let rhs = Elem::basis(vec![dm], &[x])
            .split(0, &d.delta) // x1 x2
            .split(0, &d.nabla) // h1 m1 x2
            .split(2, &d.nabla) // h1 m1 h2 m2
            .split(2, &d.blackdown) // h1 m1 bh bm m2
            .fuse(0, 2, mul_h) // H m1 bm m2
            .fuse(1, 2, mul_m); // H M m2
        elem_eq(t, &lhs, &rhs)
    }));

    // D6: h1^(1) ⊗ h1^(2)(1)·h2^(1) ⊗ h1^(2)(2)·h2^(2)
    //   = h1^(1)(1)·(h1^(2)⟨-1⟩)^(1)·(h2[0])^(1) ⊗ h1^(1)(2)·(h1^(2)⟨-1⟩)^(2)·(h2[0])^(2) ⊗ h1^(2)⟨0⟩·h2[1]
    report.push(sweep("D6", AxiomForm::ProofDerived, None, &h1, opts, |t| {
        let h = t[0] as usize;
        let lhs = Elem::basis(vec![dh], &[h])
            .split(0, ch) // h1 h2
            .split(0, &d.sigma) // s1 s2 h2
            .split(1, &d.delta) // s1 d1 d2 h2
            .split(3, &d.sigma) // s1 d1 d2 t1 t2
            .fuse(1, 3, mul_m) // s1 A d2 t2
            .fuse(2, 3, mul_m); // s1 A B
        let rhs = Elem::basis(vec![dh], &[h])
            .split(0, ch) // h1 h2
            .split(0, &d.sigma) // s1 s2 h2
            .split(0, &d.delta) // a1 a2 s2 h2
            .split(2, &d.nabla) // a1 a2 nh nm h2
            .split(2, &d.sigma) // a1 a2 p1 p2 nm h2
            .split(5, &d.blackdown) // a1 a2 p1 p2 nm bh bm
            .split(5, &d.sigma) // a1 a2 p1 p2 nm q1 q2 bm
            .fuse(0, 2, mul_m) // A1 a2 p2 nm q1 q2 bm
            .fuse(0, 4, mul_m) // A a2 p2 nm q2 bm
            .fuse(1, 2, mul_m) // A B1 nm q2 bm
            .fuse(1, 3, mul_m) // A B nm bm
            .fuse(2, 3, mul_m); // A B C
        elem_eq(t, &lhs, &rhs)
    }));

    // D7: h1[0] ⊗ h1[1](1)·h2^(1) ⊗ h1[1](2)·h2^(2)
    //   = h1^(1)⟨-1⟩·h1^(2)⟨-1⟩[0]·h2[0][0] ⊗ h1^(1)⟨0⟩·h1^(2)⟨-1⟩[1]·h2[0][1] ⊗ h1^(2)⟨0⟩·h2[1]
    report.push(sweep("D7", AxiomForm::ProofDerived, None, &h1, opts, |t| {
        let h = t[0] as usize;
        let lhs = Elem::basis(vec![dh], &[h])
            .split(0, ch) // h1 h2
            .split(0, &d.blackdown) // bh bm h2
            .split(1, &d.delta) // bh d1 d2 h2
            .split(3, &d.sigma) // bh d1 d2 s1 s2
            .fuse(1, 3, mul_m) // bh A d2 s2
            .fuse(2, 3, mul_m); // bh A B
        let rhs = Elem::basis(vec![dh], &[h])
            .split(0, ch) // h1 h2
            .split(0, &d.sigma) // s1 s2 h2
            .split(0, &d.nabla) // n1h n1m s2 h2
            .split(2, &d.nabla) // n1h n1m n2h n2m h2
            .split(2, &d.blackdown) // n1h n1m b1h b1m n2m h2
            .split(5, &d.blackdown) // n1h n1m b1h b1m n2m X Y
            .split(5, &d.blackdown) // n1h n1m b1h b1m n2m X0 X1 Y
            .fuse(0, 2, mul_h) // A1 n1m b1m n2m X0 X1 Y
            .fuse(0, 4, mul_h) // A n1m b1m n2m X1 Y
            .fuse(1, 2, mul_m) // A B1 n2m X1 Y
            .fuse(1, 3, mul_m) // A B n2m Y
            .fuse(2, 3, mul_m); // A B C
        elem_eq(t, &lhs, &rhs)
    }));

    // D8: h1[0] ⊗ h1[1]⟨-1⟩·h2[0] ⊗ h1[1]⟨0⟩·h2[1] = h[0]⟨1⟩ ⊗ h[0]⟨2⟩ ⊗ h[1]
    report.push(sweep("D8", AxiomForm::ProofDerived, None, &h1, opts, |t| {
        let h = t[0] as usize;
        let lhs = Elem::basis(vec![dh], &[h])
            .split(0, ch) // h1 h2
            .split(0, &d.blackdown) // bh bm h2
            .split(1, &d.nabla) // bh nh nm h2
            .split(3, &d.blackdown) // bh nh nm ch cm
            .fuse(1, 3, mul_h) // bh B nm cm
            .fuse(2, 3, mul_m); // bh B C
        let rhs = Elem::basis(vec![dh], &[h])
            .split(0, &d.blackdown) // H0 m
            .split(0, ch); // H01 H02 m
        elem_eq(t, &lhs, &rhs)
    }));

    // D9: x⟨-1⟩·h[0] ⊗ x⟨0⟩·h[1] = h[0]·x⟨-1⟩ ⊗ h[1]·x⟨0⟩
    let mh = TupleSpace::new(vec![axis(dm), axis(dh)]);
    report.push(sweep("D9", AxiomForm::ProofDerived, None, &mh, opts, |t| {
        let idx = [t[0] as usize, t[1] as usize];
        let base = Elem::basis(vec![dm, dh], &idx)
            .split(0, &d.nabla) // xh xm h
            .split(2, &d.blackdown); // xh xm bh bm
        let lhs = base.fuse(0, 2, mul_h).fuse(1, 2, mul_m);
        let rhs = base.fuse_flip(0, 2, mul_h).fuse_flip(1, 2, mul_m);
        elem_eq(t, &lhs, &rhs)
    }));

    // D10: h^(1)·x⁽¹⁾ ⊗ h^(2)·x⁽²⁾ = x⁽¹⁾·h^(1) ⊗ x⁽²⁾·h^(2)
    report.push(sweep("D10", AxiomForm::ProofDerived, None, &mh, opts, |t| {
        let idx = [t[0] as usize, t[1] as usize];
        let base = Elem::basis(vec![dm, dh], &idx)
            .split(0, &d.delta) // x1 x2 h
            .split(2, &d.sigma); // x1 x2 s1 s2
        let lhs = base.fuse_flip(0, 2, mul_m).fuse_flip(1, 2, mul_m);
        let rhs = base.fuse(0, 2, mul_m).fuse(1, 2, mul_m);
        elem_eq(t, &lhs, &rhs)
    }));

    // D11: ∇, ▼, δ, σ are algebra maps (multiplicative and unital), plus
    // the counital normalizations tying them to η and ε.
    let mm = TupleSpace::uniform(axis(dm), 2);
    let hh = TupleSpace::uniform(axis(dh), 2);
    report.push(sweep("D11-nabla", AxiomForm::ProofDerived, None, &mm, opts, |t| {
        let idx = [t[0] as usize, t[1] as usize];
        let base = Elem::basis(vec![dm, dm], &idx);
        let lhs = base.fuse(0, 1, mul_m).split(0, &d.nabla);
        let rhs = base
            .split(0, &d.nabla)
            .split(2, &d.nabla) // h1 m1 h2 m2
            .fuse(0, 2, mul_h)
            .fuse(1, 2, mul_m);
        let unital = one_m.split(0, &d.nabla) == one_h.outer(&one_m);
        both(t, lhs == rhs, unital, "∇ not an algebra map")
    }));
    report.push(sweep("D11-blackdown", AxiomForm::ProofDerived, None, &hh, opts, |t| {
        let idx = [t[0] as usize, t[1] as usize];
        let base = Elem::basis(vec![dh, dh], &idx);
        let lhs = base.fuse(0, 1, mul_h).split(0, &d.blackdown);
        let rhs = base
            .split(0, &d.blackdown)
            .split(2, &d.blackdown) // h1 m1 h2 m2
            .fuse(0, 2, mul_h)
            .fuse(1, 2, mul_m);
        let unital = one_h.split(0, &d.blackdown) == one_h.outer(&one_m);
        both(t, lhs == rhs, unital, "▼ not an algebra map")
    }));
    report.push(sweep("D11-delta", AxiomForm::ProofDerived, None, &mm, opts, |t| {
        let idx = [t[0] as usize, t[1] as usize];
        let base = Elem::basis(vec![dm, dm], &idx);
        let lhs = base.fuse(0, 1, mul_m).split(0, &d.delta);
        let rhs = base
            .split(0, &d.delta)
            .split(2, &d.delta)
            .permute(&[0, 2, 1, 3])
            .fuse(0, 1, mul_m)
            .fuse(1, 2, mul_m);
        let unital = one_m.split(0, &d.delta) == one_m.outer(&one_m);
        both(t, lhs == rhs, unital, "δ not an algebra map")
    }));
    report.push(sweep("D11-sigma", AxiomForm::ProofDerived, None, &hh, opts, |t| {
        let idx = [t[0] as usize, t[1] as usize];
        let base = Elem::basis(vec![dh, dh], &idx);
        let lhs = base.fuse(0, 1, mul_h).split(0, &d.sigma);
        let rhs = base
            .split(0, &d.sigma)
            .split(2, &d.sigma)
            .permute(&[0, 2, 1, 3])
            .fuse(0, 1, mul_m)
            .fuse(1, 2, mul_m);
        let unital = one_h.split(0, &d.sigma) == one_m.outer(&one_m);
        both(t, lhs == rhs, unital, "σ not an algebra map")
    }));

    // Counital normalizations of the pair (the data-level analogues of the
    // cdcp unit identities).
    report.push(sweep("D-norm", AxiomForm::ProofDerived, None, &mh, opts, |t| {
        let (x, h) = (t[0] as usize, t[1] as usize);
        let nx = Elem::basis(vec![dm], &[x]).split(0, &d.nabla);
        let bh = Elem::basis(vec![dh], &[h]).split(0, &d.blackdown);
        let sh = Elem::basis(vec![dh], &[h]).split(0, &d.sigma);
        // ε(x⟨-1⟩)x⟨0⟩ = x, h[0]η(h[1]) = h,
        // x⟨-1⟩η(x⟨0⟩) = η(x)1, ε(h[0])h[1] = ε(h)1_M, η(h^(1))η(h^(2)) = ε(h)
        let c1 = nx.cap(0, eps) == Elem::basis(vec![dm], &[x]);
        let c2 = bh.cap(1, &eta) == Elem::basis(vec![dh], &[h]);
        let c3 = nx.cap(1, &eta) == one_h.scale(&eta[x]);
        let c4 = bh.cap(0, eps) == one_m.scale(&eps[h]);
        let c5 = sh.cap(0, &eta).cap(0, &eta) == Elem::basis(vec![], &[]).scale(&eps[h]);
        if c1 && c2 && c3 && c4 && c5 {
            TupleOutcome::Holds
        } else {
            TupleOutcome::Fails(Violation::noted(t.to_vec(), "counital normalization fails"))
        }
    }));

    report
}

fn both(t: &[i64], main: bool, unital: bool, note: &str) -> TupleOutcome {
    if main && unital {
        TupleOutcome::Holds
    } else {
        TupleOutcome::Fails(Violation::noted(t.to_vec(), note))
    }
}

/// Recover (∇, ▼, δ, σ) from a bialgebra L with algebra projections
/// `q: L→M`, `p: L→H` (p also a coalgebra map) such that
/// `Φ = (q⊗p)∘Δ_L: L → M⊗H` is an isomorphism:
///
/// ```text
/// ∇(x) = F(x⊗1),  ▼(h) = F(1⊗h),  δ(x) = G(x⊗1),  σ(h) = G(1⊗h),
/// ```
///
/// where `F = ((p⊗q)∘Δ_L)∘Φ⁻¹` and `G = ((q⊗q)∘Δ_L)∘Φ⁻¹`.
pub fn factorize_cdcc(
    l: &BialgebraTensor,
    m: &AlgebraTensor,
    h: &BialgebraTensor,
    q: &Matrix,
    p: &Matrix,
) -> Result<CdccData, QuantumError> {
    let dl = l.dim();
    let (dm, dh) = (m.dim(), h.dim());
    if q.rows() != dl || q.cols() != dm || p.rows() != dl || p.cols() != dh {
        return Err(QuantumError::ShapeMismatch(
            "projection matrices must map L onto M and H".into(),
        ));
    }
    m.character
        .as_ref()
        .ok_or_else(|| QuantumError::MissingCharacter("M needs a character".into()))?;

    check_algebra_map(q, &l.algebra, m, "q")?;
    check_algebra_map(p, &l.algebra, &h.algebra, "p")?;
    // p must also be a coalgebra map.
    for i in 0..dl {
        let lhs = Elem::basis(vec![dl], &[i])
            .split(0, &l.coalgebra.comul)
            .map1(0, p)
            .map1(1, p);
        let rhs = Elem::basis(vec![dl], &[i]).map1(0, p).split(0, &h.coalgebra.comul);
        if lhs != rhs {
            return Err(QuantumError::NotCoalgebraMap(format!(
                "p does not intertwine comultiplications at basis {i}"
            )));
        }
        let le = Elem::basis(vec![dl], &[i]).map1(0, p).cap(0, &h.coalgebra.counit);
        let re = Elem::basis(vec![], &[]).scale(&l.coalgebra.counit[i]);
        if le != re {
            return Err(QuantumError::NotCoalgebraMap(format!(
                "p does not preserve the counit at basis {i}"
            )));
        }
    }

    if dm * dh != dl {
        return Err(QuantumError::NotInvertible(format!(
            "dim M⊗H = {} ≠ dim L = {dl}",
            dm * dh
        )));
    }
    // Φ, F̂, Ĝ as matrices (rows indexed by L-basis).
    let mut phi_rows = Vec::with_capacity(dl);
    let mut fhat_rows = Vec::with_capacity(dl);
    let mut ghat_rows = Vec::with_capacity(dl);
    for i in 0..dl {
        let split = Elem::basis(vec![dl], &[i]).split(0, &l.coalgebra.comul);
        phi_rows.push(split.map1(0, q).map1(1, p).to_dense());
        fhat_rows.push(split.map1(0, p).map1(1, q).to_dense());
        ghat_rows.push(split.map1(0, q).map1(1, q).to_dense());
    }
    let phi = Matrix::from_rows(phi_rows)?;
    let fhat = Matrix::from_rows(fhat_rows)?;
    let ghat = Matrix::from_rows(ghat_rows)?;
    let phi_inv = phi
        .inverse()
        .map_err(|e| QuantumError::NotInvertible(e.to_string()))?;
    let f = phi_inv.mul(&fhat)?; // M⊗H → H⊗M
    let g = phi_inv.mul(&ghat)?; // M⊗H → M⊗M

    let kron = |a: &[Rational], b: &[Rational]| -> Vec<Rational> {
        let mut out = Vec::with_capacity(a.len() * b.len());
        for ai in a {
            for bj in b {
                out.push(ai * bj);
            }
        }
        out
    };
    let unit_m = &m.unit;
    let unit_h = &h.algebra.unit;

    let mut nabla = Tensor3::zeros(dm, dh, dm);
    let mut delta = Tensor3::zeros(dm, dm, dm);
    for x in 0..dm {
        let input = kron(&crate::kernel::unit_vector(dm, x), unit_h);
        let nv = f.apply(&input)?;
        let dv = g.apply(&input)?;
        for j in 0..dh {
            for k in 0..dm {
                nabla.set(x, j, k, nv[j * dm + k].clone());
            }
        }
        for a in 0..dm {
            for b in 0..dm {
                delta.set(x, a, b, dv[a * dm + b].clone());
            }
        }
    }
    let mut blackdown = Tensor3::zeros(dh, dh, dm);
    let mut sigma = Tensor3::zeros(dh, dm, dm);
    for hh in 0..dh {
        let input = kron(unit_m, &crate::kernel::unit_vector(dh, hh));
        let bv = f.apply(&input)?;
        let sv = g.apply(&input)?;
        for j in 0..dh {
            for k in 0..dm {
                blackdown.set(hh, j, k, bv[j * dm + k].clone());
            }
        }
        for a in 0..dm {
            for b in 0..dm {
                sigma.set(hh, a, b, sv[a * dm + b].clone());
            }
        }
    }

    Ok(CdccData {
        m: m.clone(),
        h: h.clone(),
        nabla,
        blackdown,
        delta,
        sigma,
    })
}

/// The isomorphism `Φ = (q⊗p)∘Δ_L` as a matrix, for transporting L onto
/// M⊗H in round-trip checks.
pub fn cdcc_isomorphism(
    l: &BialgebraTensor,
    q: &Matrix,
    p: &Matrix,
) -> Result<Matrix, QuantumError> {
    let dl = l.dim();
    let mut rows = Vec::with_capacity(dl);
    for i in 0..dl {
        rows.push(
            Elem::basis(vec![dl], &[i])
                .split(0, &l.coalgebra.comul)
                .map1(0, q)
                .map1(1, p)
                .to_dense(),
        );
    }
    Ok(Matrix::from_rows(rows)?)
}

fn check_algebra_map(
    f: &Matrix,
    src: &AlgebraTensor,
    dst: &AlgebraTensor,
    name: &str,
) -> Result<(), QuantumError> {
    let dl = src.dim();
    for i in 0..dl {
        for j in 0..dl {
            let lhs = Elem::basis(vec![dl, dl], &[i, j])
                .fuse(0, 1, &src.mul)
                .map1(0, f);
            let rhs = Elem::basis(vec![dl, dl], &[i, j])
                .map1(0, f)
                .map1(1, f)
                .fuse(0, 1, &dst.mul);
            if lhs != rhs {
                return Err(QuantumError::NotAlgebraMap(format!(
                    "{name} does not intertwine products at basis pair ({i}, {j})"
                )));
            }
        }
    }
    let unit_img = f.apply(&src.unit)?;
    if unit_img != dst.unit {
        return Err(QuantumError::NotAlgebraMap(format!(
            "{name} does not preserve the unit"
        )));
    }
    Ok(())
}
