//! The (right) cocycle double cross product: a coalgebra M with a
//! distinguished group-like and a bialgebra H, tied together by four
//! coalgebra maps
//!
//! ```text
//! ▷: H⊗M→M   ψ: H⊗M→H   ·: M⊗M→M   θ: M⊗M→H
//! ```
//!
//! The product space M⊗H becomes a bialgebra with the tensor coalgebra
//! structure and
//!
//! ```text
//! (x⊗h)(x′⊗h′) = x⟨1⟩·(h⟨1⟩▷x′⟨1⟩) ⊗ θ(x⟨2⟩, h⟨2⟩▷x′⟨2⟩) ψ(h⟨3⟩,x′⟨3⟩) h′
//! ```
//!
//! exactly when conditions C1–C10 hold. M sits inside as a subcoalgebra and
//! H as a sub-bialgebra; θ twists the product of two M-legs into H.

use super::elem::Elem;
use super::{
    coalgebra_morphism_failure, elem_eq, AlgebraTensor, BialgebraTensor, CoalgebraTensor,
    QuantumError,
};
use crate::kernel::{BasedSpace, Rational, Tensor3};
use crate::report::{
    axis, sweep, AxiomForm, CheckOptions, CheckReport, ConditionReport, TupleOutcome, TupleSpace,
    Violation,
};
use num_traits::{One, Zero};

/// Structure maps of a (right) cocycle double cross product pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CdcpData {
    /// Coalgebra factor with its distinguished group-like `e`.
    pub m: CoalgebraTensor,
    /// Bialgebra factor.
    pub h: BialgebraTensor,
    /// ▷: H⊗M→M
    pub varphi: Tensor3,
    /// ψ: H⊗M→H
    pub psi: Tensor3,
    /// x·x′: M⊗M→M
    pub phi: Tensor3,
    /// θ: M⊗M→H
    pub theta: Tensor3,
}

impl CdcpData {
    pub fn dims(&self) -> (usize, usize) {
        (self.m.dim(), self.h.dim())
    }

    pub fn grouplike_e(&self) -> Result<usize, QuantumError> {
        self.m
            .grouplike
            .ok_or_else(|| QuantumError::MissingGrouplike("M has no marked group-like".into()))
    }

    fn check_shapes(&self) -> Result<(), QuantumError> {
        let (dm, dh) = self.dims();
        let want = [
            ("varphi", self.varphi.dims(), (dh, dm, dm)),
            ("psi", self.psi.dims(), (dh, dm, dh)),
            ("phi", self.phi.dims(), (dm, dm, dm)),
            ("theta", self.theta.dims(), (dm, dm, dh)),
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

/// Data-level invariants: the underlying coalgebras, the coalgebra-morphism
/// property of all four maps, and the unital normalizations
/// `1▷x = x`, `ψ(h,e) = h`, `h▷e = ε(h)e`, `ψ(1,x) = ε(x)1`, `θ(e,e) = 1`.
pub fn validate_cdcp_data(d: &CdcpData, opts: &CheckOptions) -> ConditionReport {
    let mut report = CheckReport::new();
    if let Err(e) = d.check_shapes() {
        report.push(sweep(
            "shapes",
            AxiomForm::ProofDerived,
            None,
            &TupleSpace::uniform(vec![0], 1),
            opts,
            |t| TupleOutcome::Fails(Violation::noted(t.to_vec(), e.to_string())),
        ));
        return report;
    }
    let (dm, dh) = d.dims();
    for entry in super::verify_coalgebra(&d.m, opts).entries {
        report.push(prefixed("m", entry));
    }
    for entry in super::verify_bialgebra(&d.h, opts).entries {
        report.push(prefixed("h", entry));
    }

    let maps: [(&str, &Tensor3, &CoalgebraTensor, &CoalgebraTensor, &CoalgebraTensor); 4] = [
        ("varphi", &d.varphi, &d.h.coalgebra, &d.m, &d.m),
        ("psi", &d.psi, &d.h.coalgebra, &d.m, &d.h.coalgebra),
        ("phi", &d.phi, &d.m, &d.m, &d.m),
        ("theta", &d.theta, &d.m, &d.m, &d.h.coalgebra),
    ];
    for (name, t, a, b, e) in maps {
        let fail = coalgebra_morphism_failure(t, a, b, e);
        report.push(sweep(
            &format!("coalg-morphism-{name}"),
            AxiomForm::ProofDerived,
            None,
            &TupleSpace::uniform(vec![0], 1),
            opts,
            |tu| match fail {
                None => TupleOutcome::Holds,
                Some((i, j)) => TupleOutcome::Fails(Violation::noted(
                    tu.to_vec(),
                    format!("fails at basis pair ({i}, {j})"),
                )),
            },
        ));
    }

    if let Ok(e) = d.grouplike_e() {
        let one = d.h.algebra.unit_elem();
        let m_ax = TupleSpace::uniform(axis(dm), 1);
        let h_ax = TupleSpace::uniform(axis(dh), 1);
        report.push(sweep("norm-unit-action", AxiomForm::ProofDerived, None, &m_ax, opts, |t| {
            let x = t[0] as usize;
            let lhs = one
                .outer(&Elem::basis(vec![dm], &[x]))
                .fuse(0, 1, &d.varphi);
            elem_eq(t, &lhs, &Elem::basis(vec![dm], &[x]))
        }));
        report.push(sweep("norm-psi-unital", AxiomForm::ProofDerived, None, &h_ax, opts, |t| {
            let h = t[0] as usize;
            let lhs = Elem::basis(vec![dh, dm], &[h, e]).fuse(0, 1, &d.psi);
            elem_eq(t, &lhs, &Elem::basis(vec![dh], &[h]))
        }));
        report.push(sweep("norm-action-on-point", AxiomForm::ProofDerived, None, &h_ax, opts, |t| {
            let h = t[0] as usize;
            let lhs = Elem::basis(vec![dh, dm], &[h, e]).fuse(0, 1, &d.varphi);
            let rhs = Elem::basis(vec![dm], &[e]).scale(&d.h.coalgebra.counit[h]);
            elem_eq(t, &lhs, &rhs)
        }));
        report.push(sweep("norm-psi-on-point", AxiomForm::ProofDerived, None, &m_ax, opts, |t| {
            let x = t[0] as usize;
            let lhs = one
                .outer(&Elem::basis(vec![dm], &[x]))
                .fuse(0, 1, &d.psi);
            let rhs = one.scale(&d.m.counit[x]);
            elem_eq(t, &lhs, &rhs)
        }));
        report.push(sweep(
            "norm-theta-unital",
            AxiomForm::ProofDerived,
            None,
            &TupleSpace::uniform(vec![0], 1),
            opts,
            |t| {
                let lhs = Elem::basis(vec![dm, dm], &[e, e]).fuse(0, 1, &d.theta);
                elem_eq(t, &lhs, &one)
            },
        ));
    } else {
        report.push(sweep(
            "grouplike-e",
            AxiomForm::ProofDerived,
            None,
            &TupleSpace::uniform(vec![0], 1),
            opts,
            |t| TupleOutcome::Fails(Violation::noted(t.to_vec(), "M has no marked group-like")),
        ));
    }
    report
}

fn prefixed(prefix: &str, mut entry: crate::report::CheckEntry) -> crate::report::CheckEntry {
    entry.id = format!("{prefix}:{}", entry.id);
    entry
}

/// Assemble the bialgebra on M⊗H. The result is well-formed regardless of
/// the conditions; `verify_bialgebra` passes on it exactly when C1–C10 do.
pub fn build_cdcp(d: &CdcpData) -> Result<BialgebraTensor, QuantumError> {
    d.check_shapes()?;
    let e = d.grouplike_e()?;
    let (dm, dh) = d.dims();
    let n = dm * dh;
    let space = d.m.space.tensor(&d.h.space.clone());

    let mut mul = Tensor3::zeros(n, n, n);
    for x in 0..dm {
        for h in 0..dh {
            for x2 in 0..dm {
                for h2 in 0..dh {
                    // legs: [x, h, x′, h′]
                    let prod = Elem::basis(vec![dm, dh, dm, dh], &[x, h, x2, h2])
                        .split(0, &d.m.comul) // x1 x2 h x′ h′
                        .split(2, &d.h.coalgebra.comul) // x1 x2 h1 h2 x′ h′
                        .split(3, &d.h.coalgebra.comul) // x1 x2 h1 h2 h3 x′ h′
                        .split(5, &d.m.comul) // … x′1 x′2 h′
                        .split(6, &d.m.comul) // x1 x2 h1 h2 h3 x′1 x′2 x′3 h′
                        .fuse(2, 5, &d.varphi) // x1 x2 A h2 h3 x′2 x′3 h′
                        .fuse(3, 5, &d.varphi) // x1 x2 A B h3 x′3 h′
                        .fuse(1, 3, &d.theta) // x1 T A h3 x′3 h′
                        .fuse(3, 4, &d.psi) // x1 T A P h′
                        .fuse(0, 2, &d.phi) // M T P h′
                        .fuse(1, 2, &d.h.algebra.mul) // M TP h′
                        .fuse(1, 2, &d.h.algebra.mul); // M H
                    for (idx, c) in prod.iter() {
                        *mul.at_mut(x * dh + h, x2 * dh + h2, idx[0] * dh + idx[1]) += c;
                    }
                }
            }
        }
    }

    let mut unit = vec![Rational::zero(); n];
    for (b, c) in d.h.algebra.unit.iter().enumerate() {
        unit[e * dh + b] = c.clone();
    }

    let mut comul = Tensor3::zeros(n, n, n);
    let mut counit = vec![Rational::zero(); n];
    for x in 0..dm {
        for h in 0..dh {
            counit[x * dh + h] = &d.m.counit[x] * &d.h.coalgebra.counit[h];
            for a in 0..dm {
                for c in 0..dm {
                    let mc = d.m.comul.at(x, a, c);
                    if mc.is_zero() {
                        continue;
                    }
                    for b in 0..dh {
                        for dd in 0..dh {
                            let hc = d.h.coalgebra.comul.at(h, b, dd);
                            if hc.is_zero() {
                                continue;
                            }
                            *comul.at_mut(x * dh + h, a * dh + b, c * dh + dd) += mc * hc;
                        }
                    }
                }
            }
        }
    }

    let grouplike = if d.h.algebra.unit.iter().enumerate().all(|(i, c)| {
        (c.is_one() && d.h.coalgebra.grouplike == Some(i)) || c.is_zero()
    }) {
        d.h.coalgebra.grouplike.map(|g1| e * dh + g1)
    } else {
        None
    };

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
            grouplike,
        },
    })
}

/// The ten compatibility conditions C1–C10, each evaluated on every basis
/// tuple by Sweedler expansion through the comultiplication tensors.
pub fn verify_cdcp_conditions(d: &CdcpData, opts: &CheckOptions) -> ConditionReport {
    let mut report = CheckReport::new();
    if d.check_shapes().is_err() || d.grouplike_e().is_err() {
        report.push(sweep(
            "shapes",
            AxiomForm::ProofDerived,
            None,
            &TupleSpace::uniform(vec![0], 1),
            opts,
            |t| TupleOutcome::Fails(Violation::noted(t.to_vec(), "bad shapes or no group-like")),
        ));
        return report;
    }
    let e = d.grouplike_e().expect("checked");
    let (dm, dh) = d.dims();
    let cm = &d.m.comul;
    let ch = &d.h.coalgebra.comul;
    let mul_h = &d.h.algebra.mul;
    let one = d.h.algebra.unit_elem();

    let m1 = TupleSpace::uniform(axis(dm), 1);
    report.push(sweep("C1", AxiomForm::ProofDerived, None, &m1, opts, |t| {
        let x = t[0] as usize;
        let ex = Elem::basis(vec![dm, dm], &[e, x]).fuse(0, 1, &d.phi);
        let xe = Elem::basis(vec![dm, dm], &[x, e]).fuse(0, 1, &d.phi);
        let b = Elem::basis(vec![dm], &[x]);
        if ex == b && xe == b {
            TupleOutcome::Holds
        } else {
            TupleOutcome::Fails(Violation::noted(t.to_vec(), "e·x = x = x·e fails"))
        }
    }));
    report.push(sweep("C2", AxiomForm::ProofDerived, None, &m1, opts, |t| {
        let x = t[0] as usize;
        let xe = Elem::basis(vec![dm, dm], &[x, e]).fuse(0, 1, &d.theta);
        let ex = Elem::basis(vec![dm, dm], &[e, x]).fuse(0, 1, &d.theta);
        let rhs = one.scale(&d.m.counit[x]);
        if xe == rhs && ex == rhs {
            TupleOutcome::Holds
        } else {
            TupleOutcome::Fails(Violation::noted(t.to_vec(), "θ(x,e) = ε(x)1 = θ(e,x) fails"))
        }
    }));

    // C3: h▷(x·x′) = (h1▷x1)·(ψ(h2,x2)▷x′)
    let hmm = TupleSpace::new(vec![axis(dh), axis(dm), axis(dm)]);
    report.push(sweep("C3", AxiomForm::ProofDerived, None, &hmm, opts, |t| {
        let idx = [t[0] as usize, t[1] as usize, t[2] as usize];
        let base = Elem::basis(vec![dh, dm, dm], &idx);
        let lhs = base.fuse(1, 2, &d.phi).fuse(0, 1, &d.varphi);
        let rhs = base
            .split(0, ch) // h1 h2 x x′
            .split(2, cm) // h1 h2 x1 x2 x′
            .fuse(0, 2, &d.varphi) // A h2 x2 x′
            .fuse(1, 2, &d.psi) // A P x′
            .fuse(1, 2, &d.varphi) // A Px′
            .fuse(0, 1, &d.phi);
        elem_eq(t, &lhs, &rhs)
    }));

    // C4: ψ(h, x1·x′1)θ(x2,x′2) = θ(h1▷x1, ψ(h2,x2)▷x′1)ψ(ψ(h3,x3), x′2)
    report.push(sweep("C4", AxiomForm::ProofDerived, None, &hmm, opts, |t| {
        let idx = [t[0] as usize, t[1] as usize, t[2] as usize];
        let base = Elem::basis(vec![dh, dm, dm], &idx);
        let lhs = base
            .split(1, cm) // h x1 x2 x′
            .split(3, cm) // h x1 x2 x′1 x′2
            .fuse(1, 3, &d.phi) // h X x2 x′2
            .fuse(0, 1, &d.psi) // P x2 x′2
            .fuse(1, 2, &d.theta) // P T
            .fuse(0, 1, mul_h);
        let rhs = base
            .split(0, ch)
            .split(0, ch) // h1 h2 h3 x x′
            .split(3, cm)
            .split(3, cm) // h1 h2 h3 x1 x2 x3 x′
            .split(6, cm) // h1 h2 h3 x1 x2 x3 x′1 x′2
            .fuse(0, 3, &d.varphi) // A h2 h3 x2 x3 x′1 x′2
            .fuse(1, 3, &d.psi) // A B h3 x3 x′1 x′2
            .fuse(1, 4, &d.varphi) // A C h3 x3 x′2
            .fuse(0, 1, &d.theta) // T h3 x3 x′2
            .fuse(1, 2, &d.psi) // T D x′2
            .fuse(1, 2, &d.psi) // T E
            .fuse(0, 1, mul_h);
        elem_eq(t, &lhs, &rhs)
    }));

    // C5: ψ(hh′, x) = ψ(h, h′1▷x1)ψ(h′2, x2)
    let hhm = TupleSpace::new(vec![axis(dh), axis(dh), axis(dm)]);
    report.push(sweep("C5", AxiomForm::ProofDerived, None, &hhm, opts, |t| {
        let idx = [t[0] as usize, t[1] as usize, t[2] as usize];
        let base = Elem::basis(vec![dh, dh, dm], &idx);
        let lhs = base.fuse(0, 1, mul_h).fuse(0, 1, &d.psi);
        let rhs = base
            .split(1, ch) // h h′1 h′2 x
            .split(3, cm) // h h′1 h′2 x1 x2
            .fuse(1, 3, &d.varphi) // h A h′2 x2
            .fuse(0, 1, &d.psi) // P1 h′2 x2
            .fuse(1, 2, &d.psi) // P1 P2
            .fuse(0, 1, mul_h);
        elem_eq(t, &lhs, &rhs)
    }));

    // C6: M is a left H-module: (hh′)▷x = h▷(h′▷x), 1▷x = x.
    report.push(sweep("C6", AxiomForm::ProofDerived, None, &hhm, opts, |t| {
        let idx = [t[0] as usize, t[1] as usize, t[2] as usize];
        let base = Elem::basis(vec![dh, dh, dm], &idx);
        let lhs = base.fuse(0, 1, mul_h).fuse(0, 1, &d.varphi);
        let rhs = base.fuse(1, 2, &d.varphi).fuse(0, 1, &d.varphi);
        let unital = one
            .outer(&Elem::basis(vec![dm], &[idx[2]]))
            .fuse(0, 1, &d.varphi)
            == Elem::basis(vec![dm], &[idx[2]]);
        match elem_eq(t, &lhs, &rhs) {
            TupleOutcome::Holds if unital => TupleOutcome::Holds,
            TupleOutcome::Holds => {
                TupleOutcome::Fails(Violation::noted(t.to_vec(), "1▷x ≠ x"))
            }
            fail => fail,
        }
    }));

    // C7: x·(x′·x″) = (x1·x′1)·(θ(x2,x′2)▷x″)
    let mmm = TupleSpace::uniform(axis(dm), 3);
    report.push(sweep("C7", AxiomForm::ProofDerived, None, &mmm, opts, |t| {
        let idx = [t[0] as usize, t[1] as usize, t[2] as usize];
        let base = Elem::basis(vec![dm, dm, dm], &idx);
        let lhs = base.fuse(1, 2, &d.phi).fuse(0, 1, &d.phi);
        let rhs = base
            .split(0, cm) // x1 x2 x′ x″
            .split(2, cm) // x1 x2 x′1 x′2 x″
            .fuse(0, 2, &d.phi) // A x2 x′2 x″
            .fuse(1, 2, &d.theta) // A T x″
            .fuse(1, 2, &d.varphi) // A Tx″
            .fuse(0, 1, &d.phi);
        elem_eq(t, &lhs, &rhs)
    }));

    // C8: θ(x, x′1·x″1)θ(x′2,x″2) = θ(x1·x′1, θ(x2,x′2)▷x″1)ψ(θ(x3,x′3), x″2)
    report.push(sweep("C8", AxiomForm::ProofDerived, None, &mmm, opts, |t| {
        let idx = [t[0] as usize, t[1] as usize, t[2] as usize];
        let base = Elem::basis(vec![dm, dm, dm], &idx);
        let lhs = base
            .split(1, cm) // x x′1 x′2 x″
            .split(3, cm) // x x′1 x′2 x″1 x″2
            .fuse(1, 3, &d.phi) // x A x′2 x″2
            .fuse(0, 1, &d.theta) // T1 x′2 x″2
            .fuse(1, 2, &d.theta) // T1 T2
            .fuse(0, 1, mul_h);
        let rhs = base
            .split(0, cm)
            .split(0, cm) // x1 x2 x3 x′ x″
            .split(3, cm)
            .split(3, cm) // x1 x2 x3 x′1 x′2 x′3 x″
            .split(6, cm) // x1 x2 x3 x′1 x′2 x′3 x″1 x″2
            .fuse(0, 3, &d.phi) // A x2 x3 x′2 x′3 x″1 x″2
            .fuse(1, 3, &d.theta) // A T x3 x′3 x″1 x″2
            .fuse(1, 4, &d.varphi) // A B x3 x′3 x″2
            .fuse(0, 1, &d.theta) // Θ x3 x′3 x″2
            .fuse(1, 2, &d.theta) // Θ T3 x″2
            .fuse(1, 2, &d.psi) // Θ Ψ
            .fuse(0, 1, mul_h);
        elem_eq(t, &lhs, &rhs)
    }));

    // C9: ψ(h2,x2) ⊗ h1▷x1 = ψ(h1,x1) ⊗ h2▷x2 in H⊗M
    let hm = TupleSpace::new(vec![axis(dh), axis(dm)]);
    report.push(sweep("C9", AxiomForm::ProofDerived, None, &hm, opts, |t| {
        let idx = [t[0] as usize, t[1] as usize];
        let base = Elem::basis(vec![dh, dm], &idx).split(0, ch).split(2, cm);
        // legs h1 h2 x1 x2
        let lhs = base
            .fuse(1, 3, &d.psi) // h1 P x1
            .fuse(0, 2, &d.varphi) // A P
            .permute(&[1, 0]);
        let rhs = base
            .fuse(0, 2, &d.psi) // P h2 x2
            .fuse(1, 2, &d.varphi); // P A
        elem_eq(t, &lhs, &rhs)
    }));

    // C10: θ(x2,x′2) ⊗ x1·x′1 = θ(x1,x′1) ⊗ x2·x′2 in H⊗M
    let mm = TupleSpace::uniform(axis(dm), 2);
    report.push(sweep("C10", AxiomForm::ProofDerived, None, &mm, opts, |t| {
        let idx = [t[0] as usize, t[1] as usize];
        let base = Elem::basis(vec![dm, dm], &idx).split(0, cm).split(2, cm);
        // legs x1 x2 x′1 x′2
        let lhs = base
            .fuse(1, 3, &d.theta) // x1 T x′1
            .fuse(0, 2, &d.phi) // X T
            .permute(&[1, 0]);
        let rhs = base
            .fuse(0, 2, &d.theta) // T x2 x′2
            .fuse(1, 2, &d.phi); // T X
        elem_eq(t, &lhs, &rhs)
    }));

    report
}
