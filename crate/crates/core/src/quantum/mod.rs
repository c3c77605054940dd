//! Finite-dimensional bialgebra constructions: cocycle double cross
//! products, their coproduct duals, and the two-sided bicocycle double cross
//! product, all over exact rationals.
//!
//! Coalgebras, algebras and bialgebras are dense coefficient tensors on
//! based spaces. Sweedler indices are evaluated by leg surgery on sparse
//! tensor elements ([`elem::Elem`]); every compatibility condition is an
//! exact equality of such elements, swept over basis tuples (sufficient by
//! multilinearity).

pub mod bicocycle;
pub mod cdcc;
pub mod cdcp;
pub mod elem;

use crate::kernel::{BasedSpace, KernelError, Matrix, Rational, Tensor3};
use crate::report::{
    axis, sweep, AxiomForm, AxiomReport, CheckOptions, CheckReport, TupleOutcome, TupleSpace,
    Violation,
};
use elem::Elem;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum QuantumError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("map is not invertible: {0}")]
    NotInvertible(String),
    #[error("not a coalgebra map: {0}")]
    NotCoalgebraMap(String),
    #[error("not an algebra map: {0}")]
    NotAlgebraMap(String),
    #[error("missing distinguished group-like: {0}")]
    MissingGrouplike(String),
    #[error("missing distinguished character: {0}")]
    MissingCharacter(String),
}

/// A coalgebra as coefficient tensors: `Δ(e_i) = Σ comul[i][j][k] e_j⊗e_k`,
/// plus an optional distinguished group-like basis element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoalgebraTensor {
    pub space: BasedSpace,
    pub comul: Tensor3,
    pub counit: Vec<Rational>,
    pub grouplike: Option<usize>,
}

impl CoalgebraTensor {
    pub fn new(
        space: BasedSpace,
        comul: Tensor3,
        counit: Vec<Rational>,
        grouplike: Option<usize>,
    ) -> Result<Self, QuantumError> {
        let d = space.dim();
        if comul.dims() != (d, d, d) || counit.len() != d {
            return Err(QuantumError::ShapeMismatch(format!(
                "coalgebra tensors on space of dim {d}"
            )));
        }
        if let Some(g) = grouplike {
            if g >= d {
                return Err(QuantumError::MissingGrouplike(format!(
                    "group-like index {g} out of range"
                )));
            }
        }
        Ok(Self {
            space,
            comul,
            counit,
            grouplike,
        })
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Group-like coalgebra: every basis element is group-like; entry
    /// `point` is the distinguished one.
    pub fn grouplikes(space: BasedSpace, point: usize) -> Self {
        let d = space.dim();
        let mut comul = Tensor3::zeros(d, d, d);
        for i in 0..d {
            comul.set(i, i, i, Rational::one());
        }
        Self {
            space,
            comul,
            counit: vec![Rational::one(); d],
            grouplike: Some(point),
        }
    }

    pub fn basis_elem(&self, i: usize) -> Elem {
        Elem::basis(vec![self.dim()], &[i])
    }
}

/// An algebra as coefficient tensors: `e_i·e_j = Σ mul[i][j][k] e_k`, with
/// unit coordinates and an optional distinguished character (an algebra map
/// to the ground field, the dual notion of a group-like).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraTensor {
    pub space: BasedSpace,
    pub mul: Tensor3,
    pub unit: Vec<Rational>,
    pub character: Option<Vec<Rational>>,
}

impl AlgebraTensor {
    pub fn new(
        space: BasedSpace,
        mul: Tensor3,
        unit: Vec<Rational>,
        character: Option<Vec<Rational>>,
    ) -> Result<Self, QuantumError> {
        let d = space.dim();
        if mul.dims() != (d, d, d) || unit.len() != d {
            return Err(QuantumError::ShapeMismatch(format!(
                "algebra tensors on space of dim {d}"
            )));
        }
        if let Some(ch) = &character {
            if ch.len() != d {
                return Err(QuantumError::ShapeMismatch("character length".into()));
            }
        }
        Ok(Self {
            space,
            mul,
            unit,
            character,
        })
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn unit_elem(&self) -> Elem {
        Elem::from_dense(self.dim(), &self.unit)
    }
}

/// A bialgebra: compatible algebra and coalgebra structures on one space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BialgebraTensor {
    pub algebra: AlgebraTensor,
    pub coalgebra: CoalgebraTensor,
}

impl BialgebraTensor {
    pub fn new(algebra: AlgebraTensor, coalgebra: CoalgebraTensor) -> Result<Self, QuantumError> {
        if algebra.space != coalgebra.space {
            return Err(QuantumError::ShapeMismatch(
                "algebra and coalgebra live on different spaces".into(),
            ));
        }
        Ok(Self { algebra, coalgebra })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn space(&self) -> &BasedSpace {
        &self.algebra.space
    }

    /// Group algebra k[G] of a finite group: basis elements multiply by the
    /// Cayley table and are all group-like.
    pub fn group_algebra(g: &crate::group::FiniteGroup) -> Self {
        let n = g.order();
        let space = BasedSpace::new(g.labels().iter().map(|l| format!("g[{l}]")).collect())
            .expect("group labels unique");
        let mut mul = Tensor3::zeros(n, n, n);
        for a in 0..n {
            for b in 0..n {
                mul.set(a, b, g.mul(a, b), Rational::one());
            }
        }
        let mut unit = vec![Rational::zero(); n];
        unit[g.identity()] = Rational::one();
        let algebra = AlgebraTensor {
            space: space.clone(),
            mul,
            unit,
            character: Some(vec![Rational::one(); n]),
        };
        let coalgebra = CoalgebraTensor::grouplikes(space, g.identity());
        Self { algebra, coalgebra }
    }
}

/// Coassociativity, the counit laws, and the group-like marker.
pub fn verify_coalgebra(c: &CoalgebraTensor, opts: &CheckOptions) -> AxiomReport {
    let d = c.dim();
    let mut report = CheckReport::new();
    let pts = TupleSpace::uniform(axis(d), 1);
    report.push(sweep("coassoc", AxiomForm::ProofDerived, None, &pts, opts, |t| {
        let e = c.basis_elem(t[0] as usize).split(0, &c.comul);
        elem_eq(t, &e.split(0, &c.comul), &e.split(1, &c.comul))
    }));
    report.push(sweep(
        "counit-left",
        AxiomForm::ProofDerived,
        None,
        &pts,
        opts,
        |t| {
            let i = t[0] as usize;
            let e = c.basis_elem(i).split(0, &c.comul).cap(0, &c.counit);
            elem_eq(t, &e, &c.basis_elem(i))
        },
    ));
    report.push(sweep(
        "counit-right",
        AxiomForm::ProofDerived,
        None,
        &pts,
        opts,
        |t| {
            let i = t[0] as usize;
            let e = c.basis_elem(i).split(0, &c.comul).cap(1, &c.counit);
            elem_eq(t, &e, &c.basis_elem(i))
        },
    ));
    if let Some(g) = c.grouplike {
        let one = TupleSpace::uniform(vec![g as i64], 1);
        report.push(sweep(
            "grouplike",
            AxiomForm::ProofDerived,
            None,
            &one,
            opts,
            |t| {
                let gg = c.basis_elem(g).outer(&c.basis_elem(g));
                let split = c.basis_elem(g).split(0, &c.comul);
                if split == gg && c.counit[g].is_one() {
                    TupleOutcome::Holds
                } else {
                    TupleOutcome::Fails(Violation::noted(
                        t.to_vec(),
                        "marked element is not group-like",
                    ))
                }
            },
        ));
    }
    report
}

/// Associativity, the unit laws, and multiplicativity of the character.
pub fn verify_algebra(a: &AlgebraTensor, opts: &CheckOptions) -> AxiomReport {
    let d = a.dim();
    let mut report = CheckReport::new();
    let triples = TupleSpace::uniform(axis(d), 3);
    report.push(sweep("assoc", AxiomForm::ProofDerived, None, &triples, opts, |t| {
        let e = Elem::basis(
            vec![d, d, d],
            &[t[0] as usize, t[1] as usize, t[2] as usize],
        );
        elem_eq(
            t,
            &e.fuse(0, 1, &a.mul).fuse(0, 1, &a.mul),
            &e.fuse(1, 2, &a.mul).fuse(0, 1, &a.mul),
        )
    }));
    let pts = TupleSpace::uniform(axis(d), 1);
    report.push(sweep("unit", AxiomForm::ProofDerived, None, &pts, opts, |t| {
        let i = t[0] as usize;
        let b = Elem::basis(vec![d], &[i]);
        let left = a.unit_elem().outer(&b).fuse(0, 1, &a.mul);
        let right = b.outer(&a.unit_elem()).fuse(0, 1, &a.mul);
        if left == b && right == b {
            TupleOutcome::Holds
        } else {
            TupleOutcome::Fails(Violation::noted(t.to_vec(), "unit law fails"))
        }
    }));
    if let Some(ch) = &a.character {
        let pairs = TupleSpace::uniform(axis(d), 2);
        report.push(sweep(
            "character",
            AxiomForm::ProofDerived,
            None,
            &pairs,
            opts,
            |t| {
                let (i, j) = (t[0] as usize, t[1] as usize);
                let lhs = Elem::basis(vec![d, d], &[i, j])
                    .fuse(0, 1, &a.mul)
                    .cap(0, ch);
                let rhs = Elem::basis(vec![], &[]).scale(&(&ch[i] * &ch[j]));
                elem_eq(t, &lhs, &rhs)
            },
        ));
        let unit_val: Rational = a
            .unit
            .iter()
            .zip(ch)
            .map(|(u, c)| u * c)
            .fold(Rational::zero(), |acc, v| acc + v);
        report.push(sweep(
            "character-unital",
            AxiomForm::ProofDerived,
            None,
            &TupleSpace::uniform(vec![0], 1),
            opts,
            |t| {
                if unit_val.is_one() {
                    TupleOutcome::Holds
                } else {
                    TupleOutcome::Fails(Violation::noted(t.to_vec(), "η(1) ≠ 1"))
                }
            },
        ));
    }
    report
}

/// Full bialgebra check: both structures plus Δ and ε multiplicative and
/// unital.
pub fn verify_bialgebra(b: &BialgebraTensor, opts: &CheckOptions) -> AxiomReport {
    let d = b.dim();
    let mut report = verify_algebra(&b.algebra, opts);
    for entry in verify_coalgebra(&b.coalgebra, opts).entries {
        report.push(entry);
    }
    let mul = &b.algebra.mul;
    let comul = &b.coalgebra.comul;
    let pairs = TupleSpace::uniform(axis(d), 2);
    report.push(sweep(
        "delta-mult",
        AxiomForm::ProofDerived,
        None,
        &pairs,
        opts,
        |t| {
            let e = Elem::basis(vec![d, d], &[t[0] as usize, t[1] as usize]);
            let lhs = e.fuse(0, 1, mul).split(0, comul);
            let rhs = e
                .split(0, comul)
                .split(2, comul)
                .permute(&[0, 2, 1, 3])
                .fuse(0, 1, mul)
                .fuse(1, 2, mul);
            elem_eq(t, &lhs, &rhs)
        },
    ));
    report.push(sweep(
        "counit-mult",
        AxiomForm::ProofDerived,
        None,
        &pairs,
        opts,
        |t| {
            let (i, j) = (t[0] as usize, t[1] as usize);
            let lhs = Elem::basis(vec![d, d], &[i, j])
                .fuse(0, 1, mul)
                .cap(0, &b.coalgebra.counit);
            let rhs = Elem::basis(vec![], &[])
                .scale(&(&b.coalgebra.counit[i] * &b.coalgebra.counit[j]));
            elem_eq(t, &lhs, &rhs)
        },
    ));
    let unit_checks = TupleSpace::uniform(vec![0], 1);
    report.push(sweep(
        "delta-unit",
        AxiomForm::ProofDerived,
        None,
        &unit_checks,
        opts,
        |t| {
            let one = b.algebra.unit_elem();
            elem_eq(t, &one.split(0, comul), &one.outer(&one))
        },
    ));
    report.push(sweep(
        "counit-unit",
        AxiomForm::ProofDerived,
        None,
        &unit_checks,
        opts,
        |t| {
            let v = b.algebra.unit_elem().cap(0, &b.coalgebra.counit);
            elem_eq(t, &v, &Elem::basis(vec![], &[]))
        },
    ));
    report
}

/// Linear dual: multiplication and comultiplication trade places by index
/// transposition, unit and counit swap. An exact involution.
pub fn dualize(b: &BialgebraTensor) -> BialgebraTensor {
    let d = b.dim();
    let space = BasedSpace::new(
        b.space()
            .labels()
            .iter()
            .map(|l| {
                l.strip_suffix('\'')
                    .map(str::to_string)
                    .unwrap_or_else(|| format!("{l}'"))
            })
            .collect(),
    )
    .unwrap_or_else(|_| BasedSpace::numbered("d", d));
    let mut mul = Tensor3::zeros(d, d, d);
    let mut comul = Tensor3::zeros(d, d, d);
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                *mul.at_mut(i, j, k) = b.coalgebra.comul.at(k, i, j).clone();
                *comul.at_mut(i, j, k) = b.algebra.mul.at(j, k, i).clone();
            }
        }
    }
    // The old character becomes the new group-like when it is a basis
    // vector; the old group-like always becomes a character (evaluation).
    let grouplike = b.algebra.character.as_ref().and_then(|ch| {
        let ones: Vec<usize> = (0..d).filter(|&i| !ch[i].is_zero()).collect();
        match ones.as_slice() {
            [i] if ch[*i].is_one() => Some(*i),
            _ => None,
        }
    });
    let character = b.coalgebra.grouplike.map(|g| {
        let mut v = vec![Rational::zero(); d];
        v[g] = Rational::one();
        v
    });
    BialgebraTensor {
        algebra: AlgebraTensor {
            space: space.clone(),
            mul,
            unit: b.coalgebra.counit.clone(),
            character,
        },
        coalgebra: CoalgebraTensor {
            space,
            comul,
            counit: b.algebra.unit.clone(),
            grouplike,
        },
    }
}

/// Transport a bialgebra structure along a linear isomorphism
/// `to_new: src coords → new coords` (rows indexed by src basis).
pub fn transport_bialgebra(
    src: &BialgebraTensor,
    to_new: &Matrix,
    new_space: BasedSpace,
) -> Result<BialgebraTensor, QuantumError> {
    let d = src.dim();
    if to_new.rows() != d || to_new.cols() != new_space.dim() || new_space.dim() != d {
        return Err(QuantumError::ShapeMismatch(
            "transport isomorphism must be square over matching dims".into(),
        ));
    }
    let back = to_new.inverse().map_err(|e| match e {
        KernelError::SingularMatrix(s) => QuantumError::NotInvertible(s),
        other => QuantumError::Kernel(other),
    })?;
    let mut mul = Tensor3::zeros(d, d, d);
    let mut comul = Tensor3::zeros(d, d, d);
    for i in 0..d {
        for j in 0..d {
            // new basis i,j pulled back to src, multiplied, pushed forward
            let a = Elem::from_dense(d, back.row(i));
            let b = Elem::from_dense(d, back.row(j));
            let prod = a.outer(&b).fuse(0, 1, &src.algebra.mul).map1(0, to_new);
            for (idx, c) in prod.iter() {
                *mul.at_mut(i, j, idx[0]) += c;
            }
        }
        let split = Elem::from_dense(d, back.row(i))
            .split(0, &src.coalgebra.comul)
            .map1(0, to_new)
            .map1(1, to_new);
        for (idx, c) in split.iter() {
            *comul.at_mut(i, idx[0], idx[1]) += c;
        }
    }
    let unit = to_new.apply(&src.algebra.unit)?;
    let counit: Vec<Rational> = (0..d)
        .map(|i| {
            back.row(i)
                .iter()
                .zip(&src.coalgebra.counit)
                .map(|(a, b)| a * b)
                .fold(Rational::zero(), |acc, v| acc + v)
        })
        .collect();
    let character = src.algebra.character.as_ref().map(|ch| {
        (0..d)
            .map(|i| {
                back.row(i)
                    .iter()
                    .zip(ch)
                    .map(|(a, b)| a * b)
                    .fold(Rational::zero(), |acc, v| acc + v)
            })
            .collect()
    });
    // group-like marker survives only if it lands exactly on a basis vector
    let grouplike = src.coalgebra.grouplike.and_then(|g| {
        let img = to_new.apply(&crate::kernel::unit_vector(d, g)).ok()?;
        let hits: Vec<usize> = (0..d).filter(|&k| !img[k].is_zero()).collect();
        match hits.as_slice() {
            [k] if img[*k].is_one() => Some(*k),
            _ => None,
        }
    });
    Ok(BialgebraTensor {
        algebra: AlgebraTensor {
            space: new_space.clone(),
            mul,
            unit,
            character,
        },
        coalgebra: CoalgebraTensor {
            space: new_space,
            comul,
            counit,
            grouplike,
        },
    })
}

pub(crate) fn elem_eq(t: &[i64], lhs: &Elem, rhs: &Elem) -> TupleOutcome {
    if lhs == rhs {
        TupleOutcome::Holds
    } else {
        let diff = lhs.sub(rhs);
        TupleOutcome::Fails(Violation {
            tuple: t.to_vec(),
            residual: diff.to_dense(),
            note: String::new(),
        })
    }
}

/// Check that a two-argument map tensor `t: C⊗D → E` is a coalgebra
/// morphism on all basis pairs.
pub(crate) fn coalgebra_morphism_failure(
    t: &Tensor3,
    c: &CoalgebraTensor,
    d: &CoalgebraTensor,
    e: &CoalgebraTensor,
) -> Option<(usize, usize)> {
    for i in 0..c.dim() {
        for j in 0..d.dim() {
            let base = Elem::basis(vec![c.dim(), d.dim()], &[i, j]);
            let lhs = base.fuse(0, 1, t).split(0, &e.comul);
            let rhs = base
                .split(0, &c.comul)
                .split(2, &d.comul)
                .permute(&[0, 2, 1, 3])
                .fuse(0, 1, t)
                .fuse(1, 2, t);
            if lhs != rhs {
                return Some((i, j));
            }
            let lc = base.fuse(0, 1, t).cap(0, &e.counit);
            let rc = Elem::basis(vec![], &[]).scale(&(&c.counit[i] * &d.counit[j]));
            if lc != rc {
                return Some((i, j));
            }
        }
    }
    None
}
