//! Bicocycle double cross products of finite pointed sets.
//!
//! This is the discrete analogue of the Lie-group construction: two pointed
//! finite sets (M, e) and (H, 1) with six tables
//!
//! ```text
//! ϕ: H×M→M   ψ: H×M→H   ·: M×M→M   θ: M×M→H   ∗: H×H→H   γ: H×H→M
//! ```
//!
//! assemble a multiplication on M×H,
//!
//! ```text
//! (x,h)(x′,h′) = ( x·[ϕ(h,x′)·γ(ψ(h,x′),h′)],  [θ(x,ϕ(h,x′))∗ψ(h,x′)]∗h′ ),
//! ```
//!
//! which is a group exactly when the unit/associativity conditions G1–G12
//! and the inverse conditions INV-R/INV-L hold. Conversely, a finite group
//! whose product map M×H→G is a bijection factors through the six tables.
//!
//! Smoothness carries no content at finite scale, so "pointed manifold"
//! becomes "pointed finite set" throughout; the local-Lie-group refinement
//! of the smooth theory has no discrete counterpart here.

use crate::report::{
    axis, sweep, AxiomForm, CheckOptions, CheckReport, ConditionReport, TupleOutcome, TupleSpace,
    Violation,
};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("normalization violated: {0}")]
    NormalizationViolated(String),
    #[error("built table is not a group; failing conditions: {0:?}")]
    NotAGroup(Box<ConditionReport>),
    #[error("product map is not bijective: {0}")]
    NotBijective(String),
    #[error("search budget of {budget} candidate pairs exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("invalid input: {0}")]
    Invalid(String),
}

/// A finite group as a labelled Cayley table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    labels: Vec<String>,
    cayley: Vec<Vec<usize>>,
    identity: usize,
}

impl FiniteGroup {
    /// Validates the full group axioms: Latin square, two-sided identity,
    /// associativity on every triple, two-sided inverses.
    pub fn from_cayley(
        labels: Vec<String>,
        cayley: Vec<Vec<usize>>,
        identity: usize,
    ) -> Result<Self, GroupError> {
        let g = Self {
            labels,
            cayley,
            identity,
        };
        let report = g.verify_axioms(&CheckOptions::default());
        if report.all_hold() {
            Ok(g)
        } else {
            Err(GroupError::NotAGroup(Box::new(report)))
        }
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a][b]
    }

    pub fn cayley(&self) -> &[Vec<usize>] {
        &self.cayley
    }

    pub fn inverse_of(&self, a: usize) -> Option<usize> {
        (0..self.order()).find(|&b| self.mul(a, b) == self.identity && self.mul(b, a) == self.identity)
    }

    /// Exhaustive axiom check as a report (well-formedness, Latin square,
    /// identity, associativity, inverses).
    pub fn verify_axioms(&self, opts: &CheckOptions) -> CheckReport {
        let n = self.order();
        let mut report = CheckReport::new();

        let ok_shape = self.identity < n
            && self.cayley.len() == n
            && self.cayley.iter().all(|r| r.len() == n)
            && self
                .cayley
                .iter()
                .all(|r| r.iter().all(|&v| v < n));
        report.push(sweep(
            "well-formed",
            AxiomForm::ProofDerived,
            None,
            &TupleSpace::uniform(vec![0], 1),
            opts,
            |t| {
                if ok_shape {
                    TupleOutcome::Holds
                } else {
                    TupleOutcome::Fails(Violation::noted(t.to_vec(), "table shape or range"))
                }
            },
        ));
        if !ok_shape {
            return report;
        }

        let rows = TupleSpace::uniform(axis(n), 2);
        report.push(sweep(
            "latin-square",
            AxiomForm::ProofDerived,
            None,
            &rows,
            opts,
            |t| {
                let (a, b) = (t[0] as usize, t[1] as usize);
                if a >= b {
                    return TupleOutcome::Skip;
                }
                for r in 0..n {
                    if self.mul(r, a) == self.mul(r, b) {
                        return TupleOutcome::Fails(Violation::noted(
                            vec![r as i64, t[0], t[1]],
                            format!(
                                "row {} repeats {}",
                                self.label(r),
                                self.label(self.mul(r, a))
                            ),
                        ));
                    }
                    if self.mul(a, r) == self.mul(b, r) {
                        return TupleOutcome::Fails(Violation::noted(
                            vec![r as i64, t[0], t[1]],
                            format!(
                                "column {} repeats {}",
                                self.label(r),
                                self.label(self.mul(a, r))
                            ),
                        ));
                    }
                }
                TupleOutcome::Holds
            },
        ));

        report.push(sweep(
            "identity",
            AxiomForm::ProofDerived,
            None,
            &TupleSpace::uniform(axis(n), 1),
            opts,
            |t| {
                let a = t[0] as usize;
                if self.mul(self.identity, a) == a && self.mul(a, self.identity) == a {
                    TupleOutcome::Holds
                } else {
                    TupleOutcome::Fails(Violation::noted(t.to_vec(), "identity law fails"))
                }
            },
        ));

        report.push(sweep(
            "associativity",
            AxiomForm::ProofDerived,
            None,
            &TupleSpace::uniform(axis(n), 3),
            opts,
            |t| {
                let (a, b, c) = (t[0] as usize, t[1] as usize, t[2] as usize);
                let lhs = self.mul(self.mul(a, b), c);
                let rhs = self.mul(a, self.mul(b, c));
                if lhs == rhs {
                    TupleOutcome::Holds
                } else {
                    TupleOutcome::Fails(Violation::noted(
                        t.to_vec(),
                        format!("(ab)c = {} ≠ {} = a(bc)", self.label(lhs), self.label(rhs)),
                    ))
                }
            },
        ));

        report.push(sweep(
            "inverses",
            AxiomForm::ProofDerived,
            None,
            &TupleSpace::uniform(axis(n), 1),
            opts,
            |t| {
                if self.inverse_of(t[0] as usize).is_some() {
                    TupleOutcome::Holds
                } else {
                    TupleOutcome::Fails(Violation::noted(t.to_vec(), "no two-sided inverse"))
                }
            },
        ));

        report
    }

    /// Cyclic group Z_n with labels `0..n`.
    pub fn cyclic(n: usize) -> Self {
        let labels = (0..n).map(|i| i.to_string()).collect();
        let cayley = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Self {
            labels,
            cayley,
            identity: 0,
        }
    }

    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let n2 = other.order();
        let mut labels = Vec::new();
        for a in &self.labels {
            for b in &other.labels {
                labels.push(format!("({a},{b})"));
            }
        }
        let order = self.order() * n2;
        let mut cayley = vec![vec![0; order]; order];
        for a1 in 0..self.order() {
            for b1 in 0..n2 {
                for a2 in 0..self.order() {
                    for b2 in 0..n2 {
                        cayley[a1 * n2 + b1][a2 * n2 + b2] =
                            self.mul(a1, a2) * n2 + other.mul(b1, b2);
                    }
                }
            }
        }
        FiniteGroup {
            labels,
            cayley,
            identity: self.identity * n2 + other.identity,
        }
    }

    /// Symmetric group S₃ with cycle-notation labels.
    pub fn symmetric3() -> Self {
        // Permutations of 0,1,2 as arrays; composition p∘q = apply q first.
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2], // e
            [1, 2, 0], // (012)
            [2, 0, 1], // (021)
            [1, 0, 2], // (01)
            [2, 1, 0], // (02)
            [0, 2, 1], // (12)
        ];
        let labels = ["e", "(012)", "(021)", "(01)", "(02)", "(12)"]
            .map(String::from)
            .to_vec();
        let compose = |p: [usize; 3], q: [usize; 3]| [p[q[0]], p[q[1]], p[q[2]]];
        let find = |r: [usize; 3]| perms.iter().position(|&p| p == r).unwrap();
        let cayley = (0..6)
            .map(|a| (0..6).map(|b| find(compose(perms[a], perms[b]))).collect())
            .collect();
        Self {
            labels,
            cayley,
            identity: 0,
        }
    }

    /// Dihedral group of order 8: r⁴ = s² = e, s·r·s = r⁻¹.
    pub fn dihedral4() -> Self {
        // Elements r^a s^b with 0 ≤ a < 4, b ∈ {0,1}; index = 2a + b.
        let labels = (0..4)
            .flat_map(|a| [format!("r{a}"), format!("r{a}s")])
            .collect();
        let mut cayley = vec![vec![0; 8]; 8];
        for a1 in 0..4usize {
            for b1 in 0..2usize {
                for a2 in 0..4usize {
                    for b2 in 0..2usize {
                        // (r^a1 s^b1)(r^a2 s^b2): s r^a = r^{-a} s.
                        let a = if b1 == 0 { (a1 + a2) % 4 } else { (a1 + 4 - a2) % 4 };
                        let b = (b1 + b2) % 2;
                        cayley[2 * a1 + b1][2 * a2 + b2] = 2 * a + b;
                    }
                }
            }
        }
        Self {
            labels,
            cayley,
            identity: 0,
        }
    }

    /// Quaternion group Q₈ = {1, −1, i, −i, j, −j, k, −k}.
    pub fn quaternion8() -> Self {
        let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
            .map(String::from)
            .to_vec();
        // Represent q = (sign, axis) with axis 0 = scalar, 1 = i, 2 = j, 3 = k.
        let dec = |n: usize| (n % 2 == 1, n / 2); // (negative?, axis)
        let enc = |neg: bool, axis: usize| 2 * axis + usize::from(neg);
        let table = |a1: usize, a2: usize| -> (bool, usize) {
            // i·j = k, j·k = i, k·i = j; x·x = −1 for axes.
            match (a1, a2) {
                (0, a) | (a, 0) => (false, a),
                (a, b) if a == b => (true, 0),
                (1, 2) => (false, 3),
                (2, 3) => (false, 1),
                (3, 1) => (false, 2),
                (2, 1) => (true, 3),
                (3, 2) => (true, 1),
                (1, 3) => (true, 2),
                _ => unreachable!(),
            }
        };
        let mut cayley = vec![vec![0; 8]; 8];
        for n1 in 0..8 {
            for n2 in 0..8 {
                let (s1, a1) = dec(n1);
                let (s2, a2) = dec(n2);
                let (s3, a3) = table(a1, a2);
                cayley[n1][n2] = enc(s1 ^ s2 ^ s3, a3);
            }
        }
        Self {
            labels,
            cayley,
            identity: 0,
        }
    }
}

/// A finite set with a distinguished point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedSet {
    pub labels: Vec<String>,
    pub point: usize,
}

impl PointedSet {
    pub fn new(labels: Vec<String>, point: usize) -> Result<Self, GroupError> {
        if point >= labels.len() {
            return Err(GroupError::Invalid(format!(
                "point index {point} out of range for {} labels",
                labels.len()
            )));
        }
        Ok(Self { labels, point })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

/// The six set-level structure tables on a pair of pointed sets. Tables are
/// stored as index matrices: `varphi[h][x]` is an M-index, and so on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BicocycleGroupData {
    pub m: PointedSet,
    pub h: PointedSet,
    /// ϕ: H×M→M
    pub varphi: Vec<Vec<usize>>,
    /// ψ: H×M→H
    pub psi: Vec<Vec<usize>>,
    /// x·x′, the M-component of the would-be product: M×M→M
    pub phi: Vec<Vec<usize>>,
    /// θ: M×M→H
    pub theta: Vec<Vec<usize>>,
    /// h∗h′: H×H→H
    pub mu: Vec<Vec<usize>>,
    /// γ: H×H→M
    pub gamma: Vec<Vec<usize>>,
}

impl BicocycleGroupData {
    /// The normalization identities the tables must satisfy up front:
    /// ϕ(1,x)=x, ϕ(h,e)=e, ψ(h,e)=h, ψ(1,x)=1, e·e=e, 1∗1=1, θ(e,e)=1,
    /// γ(1,1)=e.
    pub fn validate_normalization(&self) -> Result<(), GroupError> {
        let (e, one) = (self.m.point, self.h.point);
        let shapes_ok = self.varphi.len() == self.h.len()
            && self.psi.len() == self.h.len()
            && self.phi.len() == self.m.len()
            && self.theta.len() == self.m.len()
            && self.mu.len() == self.h.len()
            && self.gamma.len() == self.h.len()
            && self.varphi.iter().all(|r| r.len() == self.m.len() && r.iter().all(|&v| v < self.m.len()))
            && self.psi.iter().all(|r| r.len() == self.m.len() && r.iter().all(|&v| v < self.h.len()))
            && self.phi.iter().all(|r| r.len() == self.m.len() && r.iter().all(|&v| v < self.m.len()))
            && self.theta.iter().all(|r| r.len() == self.m.len() && r.iter().all(|&v| v < self.h.len()))
            && self.mu.iter().all(|r| r.len() == self.h.len() && r.iter().all(|&v| v < self.h.len()))
            && self.gamma.iter().all(|r| r.len() == self.h.len() && r.iter().all(|&v| v < self.m.len()));
        if !shapes_ok {
            return Err(GroupError::NormalizationViolated("table shapes".into()));
        }
        for x in 0..self.m.len() {
            if self.varphi[one][x] != x {
                return Err(GroupError::NormalizationViolated(format!(
                    "ϕ(1, {}) ≠ {}",
                    self.m.labels[x], self.m.labels[x]
                )));
            }
            if self.psi[one][x] != one {
                return Err(GroupError::NormalizationViolated(format!(
                    "ψ(1, {}) ≠ 1",
                    self.m.labels[x]
                )));
            }
        }
        for h in 0..self.h.len() {
            if self.varphi[h][e] != e {
                return Err(GroupError::NormalizationViolated(format!(
                    "ϕ({}, e) ≠ e",
                    self.h.labels[h]
                )));
            }
            if self.psi[h][e] != h {
                return Err(GroupError::NormalizationViolated(format!(
                    "ψ({}, e) ≠ {}",
                    self.h.labels[h], self.h.labels[h]
                )));
            }
        }
        if self.phi[e][e] != e {
            return Err(GroupError::NormalizationViolated("e·e ≠ e".into()));
        }
        if self.mu[one][one] != one {
            return Err(GroupError::NormalizationViolated("1∗1 ≠ 1".into()));
        }
        if self.theta[e][e] != one {
            return Err(GroupError::NormalizationViolated("θ(e,e) ≠ 1".into()));
        }
        if self.gamma[one][one] != e {
            return Err(GroupError::NormalizationViolated("γ(1,1) ≠ e".into()));
        }
        Ok(())
    }

    /// Element index of `(x, h)` in the built M×H table.
    pub fn pair_index(&self, x: usize, h: usize) -> usize {
        x * self.h.len() + h
    }

    /// The product formula, at the level of pairs.
    pub fn formula(&self, x: usize, h: usize, x2: usize, h2: usize) -> (usize, usize) {
        let a = self.varphi[h][x2];
        let b = self.psi[h][x2];
        let mpart = self.phi[x][self.phi[a][self.gamma[b][h2]]];
        let hpart = self.mu[self.mu[self.theta[x][a]][b]][h2];
        (mpart, hpart)
    }
}

/// Build the Cayley table for the product formula, then verify the group
/// axioms exhaustively. Failure carries the axiom report.
pub fn build_bicocycle_group(d: &BicocycleGroupData) -> Result<FiniteGroup, GroupError> {
    d.validate_normalization()?;
    let (nm, nh) = (d.m.len(), d.h.len());
    let order = nm * nh;
    let mut labels = Vec::with_capacity(order);
    for x in 0..nm {
        for h in 0..nh {
            labels.push(format!("({},{})", d.m.labels[x], d.h.labels[h]));
        }
    }
    let mut cayley = vec![vec![0; order]; order];
    for x in 0..nm {
        for h in 0..nh {
            for x2 in 0..nm {
                for h2 in 0..nh {
                    let (a, b) = d.formula(x, h, x2, h2);
                    cayley[d.pair_index(x, h)][d.pair_index(x2, h2)] = d.pair_index(a, b);
                }
            }
        }
    }
    FiniteGroup::from_cayley(labels, cayley, d.pair_index(d.m.point, d.h.point))
}

/// Check the unit conditions G1–G4, the associativity-instance conditions
/// G5–G12, and the inverse conditions INV-R/INV-L, each quantified over
/// every variable appearing anywhere in the printed equation (h″ occurs only
/// on the right side of G9, and x only on the right side of G12; both are
/// still quantified, since each condition arises from an associativity
/// instance in which all three factors are present).
pub fn verify_group_conditions(d: &BicocycleGroupData, opts: &CheckOptions) -> ConditionReport {
    let (nm, nh) = (d.m.len(), d.h.len());
    let (e, one) = (d.m.point, d.h.point);
    let mut report = CheckReport::new();
    let vp = |h: usize, x: usize| d.varphi[h][x];
    let ps = |h: usize, x: usize| d.psi[h][x];
    let dot = |x: usize, y: usize| d.phi[x][y];
    let th = |x: usize, y: usize| d.theta[x][y];
    let st = |h: usize, k: usize| d.mu[h][k];
    let ga = |h: usize, k: usize| d.gamma[h][k];

    let m_ax = TupleSpace::uniform(axis(nm), 1);
    let h_ax = TupleSpace::uniform(axis(nh), 1);

    report.push(sweep("G1", AxiomForm::ProofDerived, None, &m_ax, opts, |t| {
        let x = t[0] as usize;
        eq_set(t, dot(e, x) == x && dot(x, e) == x, "e·x = x = x·e")
    }));
    report.push(sweep("G2", AxiomForm::ProofDerived, None, &h_ax, opts, |t| {
        let h = t[0] as usize;
        eq_set(t, st(one, h) == h && st(h, one) == h, "1∗h = h = h∗1")
    }));
    report.push(sweep("G3", AxiomForm::ProofDerived, None, &m_ax, opts, |t| {
        let x = t[0] as usize;
        eq_set(t, th(x, e) == one && th(e, x) == one, "θ(x,e) = 1 = θ(e,x)")
    }));
    report.push(sweep("G4", AxiomForm::ProofDerived, None, &h_ax, opts, |t| {
        let h = t[0] as usize;
        eq_set(t, ga(h, one) == e && ga(one, h) == e, "γ(h,1) = e = γ(1,h)")
    }));

    // G5/G6 over (h, x′, x″, h″).
    let hxxh = TupleSpace::new(vec![axis(nh), axis(nm), axis(nm), axis(nh)]);
    report.push(sweep("G5", AxiomForm::ProofDerived, None, &hxxh, opts, |t| {
        let (h, x1, x2, h2) = idx4(t);
        let lhs = dot(vp(h, dot(x1, x2)), ga(ps(h, dot(x1, x2)), st(th(x1, x2), h2)));
        let rhs = dot(vp(h, x1), dot(vp(ps(h, x1), x2), ga(ps(ps(h, x1), x2), h2)));
        eq_set(t, lhs == rhs, "left action on a product")
    }));
    report.push(sweep("G6", AxiomForm::ProofDerived, None, &hxxh, opts, |t| {
        let (h, x1, x2, h2) = idx4(t);
        let lhs = st(ps(h, dot(x1, x2)), st(th(x1, x2), h2));
        let rhs = st(st(th(vp(h, x1), vp(ps(h, x1), x2)), ps(ps(h, x1), x2)), h2);
        eq_set(t, lhs == rhs, "ψ against θ on a product")
    }));

    // G7/G8 over (x, h, h′, x″).
    let xhhx = TupleSpace::new(vec![axis(nm), axis(nh), axis(nh), axis(nm)]);
    report.push(sweep("G7", AxiomForm::ProofDerived, None, &xhhx, opts, |t| {
        let (x, h, h1, x2) = idx4(t);
        let lhs = st(th(dot(x, ga(h, h1)), vp(st(h, h1), x2)), ps(st(h, h1), x2));
        let rhs = st(st(th(x, vp(h, vp(h1, x2))), ps(h, vp(h1, x2))), ps(h1, x2));
        eq_set(t, lhs == rhs, "right action against a product")
    }));
    report.push(sweep("G8", AxiomForm::ProofDerived, None, &xhhx, opts, |t| {
        let (x, h, h1, x2) = idx4(t);
        let lhs = dot(dot(x, ga(h, h1)), vp(st(h, h1), x2));
        let rhs = dot(x, dot(vp(h, vp(h1, x2)), ga(ps(h, vp(h1, x2)), ps(h1, x2))));
        eq_set(t, lhs == rhs, "module-style condition on M")
    }));

    // G9/G10 over (x, x′, x″, h″); h″ appears on one side of G9 only.
    let xxxh = TupleSpace::new(vec![axis(nm), axis(nm), axis(nm), axis(nh)]);
    report.push(sweep(
        "G9",
        AxiomForm::ProofDerived,
        Some("h''"),
        &xxxh,
        opts,
        |t| {
            let (x, x1, x2, h2) = idx4(t);
            let lhs = dot(x, dot(x1, x2));
            let rhs = dot(dot(x, x1), dot(vp(th(x, x1), x2), ga(ps(th(x, x1), x2), h2)));
            eq_set(t, lhs == rhs, "associativity of · against θ")
        },
    ));
    report.push(sweep("G10", AxiomForm::ProofDerived, None, &xxxh, opts, |t| {
        let (x, x1, x2, h2) = idx4(t);
        let lhs = st(th(x, dot(x1, x2)), st(th(x1, x2), h2));
        let rhs = st(st(th(dot(x, x1), vp(th(x, x1), x2)), ps(th(x, x1), x2)), h2);
        eq_set(t, lhs == rhs, "cocycle condition for θ")
    }));

    // G11/G12 over (x, h, h′, h″); x appears on one side of G12 only.
    let xhhh = TupleSpace::new(vec![axis(nm), axis(nh), axis(nh), axis(nh)]);
    report.push(sweep("G11", AxiomForm::ProofDerived, None, &xhhh, opts, |t| {
        let (x, h, h1, h2) = idx4(t);
        let lhs = dot(dot(x, ga(h, h1)), ga(st(h, h1), h2));
        let rhs = dot(x, dot(vp(h, ga(h1, h2)), ga(ps(h, ga(h1, h2)), st(h1, h2))));
        eq_set(t, lhs == rhs, "cocycle condition for γ")
    }));
    report.push(sweep(
        "G12",
        AxiomForm::ProofDerived,
        Some("x"),
        &xhhh,
        opts,
        |t| {
            let (x, h, h1, h2) = idx4(t);
            let lhs = st(st(h, h1), h2);
            let rhs = st(st(th(x, vp(h, ga(h1, h2))), ps(h, ga(h1, h2))), st(h1, h2));
            eq_set(t, lhs == rhs, "associativity of ∗ against γ")
        },
    ));

    // INV-R/INV-L over (x, h): one-sided inverses exist in both tables.
    let xh = TupleSpace::new(vec![axis(nm), axis(nh)]);
    report.push(sweep("INV-R", AxiomForm::ProofDerived, None, &xh, opts, |t| {
        let (x, h) = (t[0] as usize, t[1] as usize);
        let ok = (0..nm).any(|xr| dot(x, xr) == e) && (0..nh).any(|hr| st(h, hr) == one);
        eq_set(t, ok, "no (x^r, h^r) with x·x^r = e, h∗h^r = 1")
    }));
    report.push(sweep("INV-L", AxiomForm::ProofDerived, None, &xh, opts, |t| {
        let (x, h) = (t[0] as usize, t[1] as usize);
        let ok = (0..nm).any(|xl| dot(xl, x) == e) && (0..nh).any(|hl| st(hl, h) == one);
        eq_set(t, ok, "no (x^ℓ, h^ℓ) with x^ℓ·x = e, h^ℓ∗h = 1")
    }));

    report
}

fn idx4(t: &[i64]) -> (usize, usize, usize, usize) {
    (t[0] as usize, t[1] as usize, t[2] as usize, t[3] as usize)
}

fn eq_set(t: &[i64], ok: bool, note: &str) -> TupleOutcome {
    if ok {
        TupleOutcome::Holds
    } else {
        TupleOutcome::Fails(Violation::noted(t.to_vec(), note))
    }
}

/// The closed inversion formula: with `x·x^r = e`, `h^ℓ∗h = 1`,
///
/// ```text
/// (x,1)⁻¹ = (x^r, θ(x,x^r)^r),   (e,h)⁻¹ = (γ(h^ℓ,h)^ℓ, h^ℓ),
/// (x,h)⁻¹ = [(x,1)(e,h)]⁻¹ = (e,h)⁻¹ (x,1)⁻¹,
/// ```
///
/// the last product taken with the built multiplication. Returns `None` when
/// a needed one-sided inverse does not exist.
pub fn closed_inverse(d: &BicocycleGroupData, x: usize, h: usize) -> Option<(usize, usize)> {
    let (nm, nh) = (d.m.len(), d.h.len());
    let (e, one) = (d.m.point, d.h.point);
    let right_m = |x: usize| (0..nm).find(|&xr| d.phi[x][xr] == e);
    let right_h = |h: usize| (0..nh).find(|&hr| d.mu[h][hr] == one);
    let left_m = |x: usize| (0..nm).find(|&xl| d.phi[xl][x] == e);
    let left_h = |h: usize| (0..nh).find(|&hl| d.mu[hl][h] == one);

    let xr = right_m(x)?;
    let inv_x = (xr, right_h(d.theta[x][xr])?);
    let hl = left_h(h)?;
    let inv_h = (left_m(d.gamma[hl][h])?, hl);
    Some(d.formula(inv_h.0, inv_h.1, inv_x.0, inv_x.1))
}

/// Recover the six tables from a group and two pointed subsets through which
/// the product map is a bijection. Subsets are given by element indices into
/// `g`; both must contain the identity, which becomes the point.
pub fn factor_group(
    g: &FiniteGroup,
    m_elems: &[usize],
    h_elems: &[usize],
) -> Result<BicocycleGroupData, GroupError> {
    let order = g.order();
    if m_elems.len() * h_elems.len() != order {
        return Err(GroupError::NotBijective(format!(
            "|M|·|H| = {}·{} ≠ |G| = {order}",
            m_elems.len(),
            h_elems.len()
        )));
    }
    let e_pos = m_elems
        .iter()
        .position(|&a| a == g.identity())
        .ok_or_else(|| GroupError::Invalid("identity not in M".into()))?;
    let one_pos = h_elems
        .iter()
        .position(|&a| a == g.identity())
        .ok_or_else(|| GroupError::Invalid("identity not in H".into()))?;

    // factor[g] = (m index, h index) with m·h = g, unique by bijectivity.
    let mut factor: Vec<Option<(usize, usize)>> = vec![None; order];
    for (mi, &a) in m_elems.iter().enumerate() {
        for (hi, &b) in h_elems.iter().enumerate() {
            let p = g.mul(a, b);
            if let Some(prev) = factor[p] {
                return Err(GroupError::NotBijective(format!(
                    "{} = {}·{} and {}·{}",
                    g.label(p),
                    g.label(m_elems[prev.0]),
                    g.label(h_elems[prev.1]),
                    g.label(a),
                    g.label(b)
                )));
            }
            factor[p] = Some((mi, hi));
        }
    }
    // Surjectivity follows from injectivity and the size count, but check.
    let split = |p: usize| factor[p].expect("product map is onto");

    let (nm, nh) = (m_elems.len(), h_elems.len());
    let mut d = BicocycleGroupData {
        m: PointedSet::new(
            m_elems.iter().map(|&a| g.label(a).to_string()).collect(),
            e_pos,
        )?,
        h: PointedSet::new(
            h_elems.iter().map(|&a| g.label(a).to_string()).collect(),
            one_pos,
        )?,
        varphi: vec![vec![0; nm]; nh],
        psi: vec![vec![0; nm]; nh],
        phi: vec![vec![0; nm]; nm],
        theta: vec![vec![0; nm]; nm],
        mu: vec![vec![0; nh]; nh],
        gamma: vec![vec![0; nh]; nh],
    };
    // hx = ϕ(h,x)·ψ(h,x), xx′ = (x·x′)·θ(x,x′), hh′ = γ(h,h′)·(h∗h′).
    for (hi, &b) in h_elems.iter().enumerate() {
        for (mi, &a) in m_elems.iter().enumerate() {
            let (vm, vh) = split(g.mul(b, a));
            d.varphi[hi][mi] = vm;
            d.psi[hi][mi] = vh;
        }
    }
    for (i, &a) in m_elems.iter().enumerate() {
        for (j, &b) in m_elems.iter().enumerate() {
            let (vm, vh) = split(g.mul(a, b));
            d.phi[i][j] = vm;
            d.theta[i][j] = vh;
        }
    }
    for (i, &a) in h_elems.iter().enumerate() {
        for (j, &b) in h_elems.iter().enumerate() {
            let (vm, vh) = split(g.mul(a, b));
            d.gamma[i][j] = vm;
            d.mu[i][j] = vh;
        }
    }
    d.validate_normalization()?;
    Ok(d)
}

/// Exhaustively enumerate pointed subset pairs (M, H) with `|M| = m_size`,
/// both containing the identity, whose product map is a bijection onto `g`.
/// `budget` caps the number of candidate pairs examined.
pub fn search_factorizations(
    g: &FiniteGroup,
    m_size: usize,
    budget: u64,
) -> Result<Vec<(Vec<usize>, Vec<usize>)>, GroupError> {
    let order = g.order();
    if m_size == 0 || order % m_size != 0 {
        return Err(GroupError::Invalid(format!(
            "m_size {m_size} does not divide group order {order}"
        )));
    }
    let h_size = order / m_size;
    let others: Vec<usize> = (0..order).filter(|&a| a != g.identity()).collect();
    let m_candidates = subsets_with_identity(g.identity(), &others, m_size);
    let h_candidates = subsets_with_identity(g.identity(), &others, h_size);
    let mut found = Vec::new();
    let mut examined = 0u64;
    for m in &m_candidates {
        for h in &h_candidates {
            examined += 1;
            if examined > budget {
                return Err(GroupError::BudgetExceeded { budget });
            }
            if product_map_bijective(g, m, h) {
                found.push((m.clone(), h.clone()));
            }
        }
    }
    Ok(found)
}

fn product_map_bijective(g: &FiniteGroup, m: &[usize], h: &[usize]) -> bool {
    let mut seen = vec![false; g.order()];
    for &a in m {
        for &b in h {
            let p = g.mul(a, b);
            if seen[p] {
                return false;
            }
            seen[p] = true;
        }
    }
    true
}

fn subsets_with_identity(identity: usize, others: &[usize], size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = vec![identity];
    fn rec(
        others: &[usize],
        start: usize,
        need: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if need == 0 {
            out.push(current.clone());
            return;
        }
        for i in start..others.len() {
            current.push(others[i]);
            rec(others, i + 1, need - 1, current, out);
            current.pop();
        }
    }
    rec(others, 0, size - 1, &mut current, &mut out);
    out
}
