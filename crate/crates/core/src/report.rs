//! Axiom/condition reports and the deterministic sweep driver.
//!
//! Every verifier in the crate walks a finite tuple space, evaluates one
//! residual per tuple, and collects violations into a [`CheckReport`]. Sweeps
//! may be partitioned across worker threads; violations are merged in
//! lexicographic tuple order, so a report is byte-identical regardless of the
//! worker count.

use crate::kernel::Rational;

/// One failing tuple: the basis (or element, or graded) indices it was
/// evaluated at, the residual coordinates where that makes sense, and a short
/// human-readable note otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub tuple: Vec<i64>,
    pub residual: Vec<Rational>,
    pub note: String,
}

impl Violation {
    pub fn residual(tuple: Vec<i64>, residual: Vec<Rational>) -> Self {
        Self {
            tuple,
            residual,
            note: String::new(),
        }
    }

    pub fn noted(tuple: Vec<i64>, note: impl Into<String>) -> Self {
        Self {
            tuple,
            residual: Vec::new(),
            note: note.into(),
        }
    }
}

/// Which textual form of an axiom a report entry evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxiomForm {
    /// The component equation extracted from the relevant proof expansion.
    ProofDerived,
    /// The equation exactly as printed, kept for comparison behind
    /// `literal_axioms`; informational only.
    Literal,
}

impl AxiomForm {
    pub fn as_str(self) -> &'static str {
        match self {
            AxiomForm::ProofDerived => "proof-derived",
            AxiomForm::Literal => "literal",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckEntry {
    pub id: String,
    pub holds: bool,
    /// Number of tuples actually evaluated (skipped tuples excluded).
    pub checked: u64,
    pub violations: Vec<Violation>,
    /// True when the violation list was cut at the configured cap.
    pub truncated: bool,
    pub form: AxiomForm,
    /// Set on conditions that carry a variable on one side only; the value
    /// is quantified over, and the report says so.
    pub extra_variable: Option<String>,
}

#[derive(Debug, Clone, Default)]
pub struct CheckReport {
    pub entries: Vec<CheckEntry>,
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// True when every non-informational entry holds.
    pub fn all_hold(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.holds || e.form == AxiomForm::Literal)
    }

    pub fn entry(&self, id: &str) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn holds(&self, id: &str) -> bool {
        self.entry(id).map(|e| e.holds).unwrap_or(false)
    }

    pub fn failing_ids(&self) -> Vec<&str> {
        self.entries
            .iter()
            .filter(|e| !e.holds && e.form == AxiomForm::ProofDerived)
            .map(|e| e.id.as_str())
            .collect()
    }

    pub fn push(&mut self, entry: CheckEntry) {
        self.entries.push(entry);
    }
}

/// Reports for Lie-algebra and matched-pair axioms.
pub type AxiomReport = CheckReport;
/// Reports for group/bialgebra compatibility conditions.
pub type ConditionReport = CheckReport;

/// Knobs shared by every verifier.
#[derive(Debug, Clone)]
pub struct CheckOptions {
    /// Per-entry violation cap.
    pub max_violations: usize,
    /// Additionally evaluate the literal printed forms of axioms whose
    /// canonical form is proof-derived (A4, B3, B7, B10).
    pub literal_axioms: bool,
    /// Worker threads for tuple sweeps. Reports do not depend on this.
    pub jobs: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self {
            max_violations: 32,
            literal_axioms: false,
            jobs: 1,
        }
    }
}

/// Outcome of evaluating one tuple.
pub enum TupleOutcome {
    /// Tuple outside the applicable sub-range (not counted).
    Skip,
    Holds,
    Fails(Violation),
}

/// Rectangular tuple space: position `p` ranges over `axes[p]`.
pub struct TupleSpace {
    pub axes: Vec<Vec<i64>>,
}

impl TupleSpace {
    pub fn new(axes: Vec<Vec<i64>>) -> Self {
        Self { axes }
    }

    /// All positions range over the same axis.
    pub fn uniform(axis: Vec<i64>, arity: usize) -> Self {
        Self {
            axes: vec![axis; arity],
        }
    }

    fn size(&self) -> u64 {
        self.axes.iter().map(|a| a.len() as u64).product()
    }

    fn tuple_at(&self, mut index: u64) -> Vec<i64> {
        let mut out = vec![0i64; self.axes.len()];
        for (p, axis) in self.axes.iter().enumerate().rev() {
            let n = axis.len() as u64;
            out[p] = axis[(index % n) as usize];
            index /= n;
        }
        out
    }
}

/// Sweep `space`, evaluating `eval` on every tuple, partitioned over
/// `opts.jobs` workers by strided outer index. Violations are sorted
/// lexicographically and truncated to `opts.max_violations`.
pub fn sweep<F>(
    id: &str,
    form: AxiomForm,
    extra_variable: Option<&str>,
    space: &TupleSpace,
    opts: &CheckOptions,
    eval: F,
) -> CheckEntry
where
    F: Fn(&[i64]) -> TupleOutcome + Sync,
{
    let total = space.size();
    let jobs = opts.jobs.max(1);
    let run_worker = |worker: usize| {
        let mut checked = 0u64;
        let mut violations = Vec::new();
        let mut index = worker as u64;
        while index < total {
            match eval(&space.tuple_at(index)) {
                TupleOutcome::Skip => {}
                TupleOutcome::Holds => checked += 1,
                TupleOutcome::Fails(v) => {
                    checked += 1;
                    violations.push(v);
                }
            }
            index += jobs as u64;
        }
        (checked, violations)
    };

    let (checked, mut violations) = if jobs == 1 {
        run_worker(0)
    } else {
        let results: Vec<(u64, Vec<Violation>)> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..jobs)
                .map(|w| scope.spawn(move || run_worker(w)))
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        let mut checked = 0;
        let mut violations = Vec::new();
        for (c, mut v) in results {
            checked += c;
            violations.append(&mut v);
        }
        (checked, violations)
    };

    violations.sort_by(|a, b| a.tuple.cmp(&b.tuple));
    let truncated = violations.len() > opts.max_violations;
    violations.truncate(opts.max_violations);
    CheckEntry {
        id: id.to_string(),
        holds: violations.is_empty() && !truncated,
        checked,
        violations,
        truncated,
        form,
        extra_variable: extra_variable.map(str::to_string),
    }
}

/// Index axis `0..n` as i64, the common case for dense basis sweeps.
pub fn axis(n: usize) -> Vec<i64> {
    (0..n as i64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rat;

    #[test]
    fn sweep_is_deterministic_across_job_counts() {
        let space = TupleSpace::uniform(axis(7), 3);
        let eval = |t: &[i64]| {
            if (t[0] + t[1] + t[2]) % 5 == 0 {
                TupleOutcome::Fails(Violation::residual(t.to_vec(), vec![rat(1)]))
            } else {
                TupleOutcome::Holds
            }
        };
        let base = sweep(
            "x",
            AxiomForm::ProofDerived,
            None,
            &space,
            &CheckOptions::default(),
            eval,
        );
        for jobs in [2, 3, 8] {
            let opts = CheckOptions {
                jobs,
                ..CheckOptions::default()
            };
            let r = sweep("x", AxiomForm::ProofDerived, None, &space, &opts, eval);
            assert_eq!(r.checked, base.checked);
            assert_eq!(r.violations, base.violations);
            assert_eq!(r.truncated, base.truncated);
        }
    }

    #[test]
    fn violation_cap_marks_truncation() {
        let space = TupleSpace::uniform(axis(10), 2);
        let opts = CheckOptions {
            max_violations: 4,
            ..CheckOptions::default()
        };
        let entry = sweep("y", AxiomForm::ProofDerived, None, &space, &opts, |t| {
            TupleOutcome::Fails(Violation::noted(t.to_vec(), "always"))
        });
        assert!(!entry.holds);
        assert!(entry.truncated);
        assert_eq!(entry.violations.len(), 4);
        assert_eq!(entry.checked, 100);
    }
}
