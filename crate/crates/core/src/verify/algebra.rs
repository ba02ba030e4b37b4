use crate::linear::{vec_add, vec_sub, MatrixS, StructureTensor, Vector};
use crate::model::{AlgebraBundle, OpName};
use crate::scalar::Scalar;

use super::{invert, Axiom, AxiomSystem, CheckError};

/// `αβ = βα` and multiplicativity of α, β for each named operation.
pub fn structure_map_axioms(
    alpha: &MatrixS,
    beta: &MatrixS,
    ops: &[(&str, &StructureTensor)],
    space: usize,
) -> Vec<Axiom> {
    let mut out = Vec::new();
    let (a, b) = (alpha.clone(), beta.clone());
    out.push(Axiom::new(
        "alpha-beta-commute",
        vec![space],
        Box::new(move |x| vec_sub(&a.apply(&b.apply(x[0])), &b.apply(&a.apply(x[0])))),
    ));
    for (label, m) in [("alpha", alpha), ("beta", beta)] {
        for (op, t) in ops {
            let (m, t) = (m.clone(), (*t).clone());
            out.push(Axiom::new(
                format!("{label}-multiplicative({op})"),
                vec![space, space],
                Box::new(move |x| vec_sub(&m.apply(&t.eval(x[0], x[1])), &t.eval(&m.apply(x[0]), &m.apply(x[1])))),
            ));
        }
    }
    out
}

/// BiHom-skew-symmetry and the BiHom-Jacobi cyclic sum.
pub fn bihom_lie_axioms(bracket: &StructureTensor, alpha: &MatrixS, beta: &MatrixS, space: usize) -> Vec<Axiom> {
    let (t, a, b) = (bracket.clone(), alpha.clone(), beta.clone());
    let skew = Axiom::new(
        "bihom-skew-symmetry",
        vec![space, space],
        Box::new(move |v| {
            let (x, y) = (v[0], v[1]);
            vec_add(&t.eval(&b.apply(x), &a.apply(y)), &t.eval(&b.apply(y), &a.apply(x)))
        }),
    );
    let (t, a, b) = (bracket.clone(), alpha.clone(), beta.clone());
    let jacobi = Axiom::new(
        "bihom-jacobi",
        vec![space, space, space],
        Box::new(move |v| {
            let term = |x: &[Scalar], y: &[Scalar], z: &[Scalar]| {
                t.eval(&b.apply(&b.apply(x)), &t.eval(&b.apply(y), &a.apply(z)))
            };
            let s = vec_add(&term(v[0], v[1], v[2]), &term(v[1], v[2], v[0]));
            vec_add(&s, &term(v[2], v[0], v[1]))
        }),
    );
    vec![skew, jacobi]
}

/// The two compatibility conditions between torsion and connection.
pub fn bihom_post_lie_axioms(
    bracket: &StructureTensor,
    triangle: &StructureTensor,
    alpha: &MatrixS,
    beta: &MatrixS,
    space: usize,
) -> Vec<Axiom> {
    let (br, tr, a, b) = (bracket.clone(), triangle.clone(), alpha.clone(), beta.clone());
    // αβ(x)⊳[y,z] = [βx⊳y, βz] + [βy, αx⊳z]
    let cond1 = Axiom::new(
        "post-lie-1",
        vec![space; 3],
        Box::new(move |v| {
            let (x, y, z) = (v[0], v[1], v[2]);
            let lhs = tr.eval(&a.apply(&b.apply(x)), &br.eval(y, z));
            let r1 = br.eval(&tr.eval(&b.apply(x), y), &b.apply(z));
            let r2 = br.eval(&b.apply(y), &tr.eval(&a.apply(x), z));
            vec_sub(&lhs, &vec_add(&r1, &r2))
        }),
    );
    let (br, tr, a, b) = (bracket.clone(), triangle.clone(), alpha.clone(), beta.clone());
    // [βx,αy]⊳βz = as(βx,αy,z) − as(βy,αx,z)
    let cond2 = Axiom::new(
        "post-lie-2",
        vec![space; 3],
        Box::new(move |v| {
            let (x, y, z) = (v[0], v[1], v[2]);
            let assoc = |p: &[Scalar], q: &[Scalar], r: &[Scalar]| -> Vector {
                vec_sub(&tr.eval(&a.apply(p), &tr.eval(q, r)), &tr.eval(&tr.eval(p, q), &b.apply(r)))
            };
            let (bx, ax, by, ay) = (b.apply(x), a.apply(x), b.apply(y), a.apply(y));
            let lhs = tr.eval(&br.eval(&bx, &ay), &b.apply(z));
            vec_sub(&lhs, &vec_sub(&assoc(&bx, &ay, z), &assoc(&by, &ax, z)))
        }),
    );
    vec![cond1, cond2]
}

pub fn bihom_lr_axioms(dot: &StructureTensor, alpha: &MatrixS, beta: &MatrixS, space: usize) -> Vec<Axiom> {
    let (t, a) = (dot.clone(), alpha.clone());
    let lr1 = Axiom::new(
        "lr-1",
        vec![space; 3],
        Box::new(move |v| {
            let (x, y, z) = (v[0], v[1], v[2]);
            vec_sub(&t.eval(&t.eval(x, y), &a.apply(z)), &t.eval(&t.eval(x, z), &a.apply(y)))
        }),
    );
    let (t, b) = (dot.clone(), beta.clone());
    let lr2 = Axiom::new(
        "lr-2",
        vec![space; 3],
        Box::new(move |v| {
            let (x, y, z) = (v[0], v[1], v[2]);
            vec_sub(&t.eval(&b.apply(x), &t.eval(y, z)), &t.eval(&b.apply(y), &t.eval(x, z)))
        }),
    );
    vec![lr1, lr2]
}

/// The seven triple identities of a BiHom-tri-dendriform algebra.
pub fn tridendriform_axioms(
    prec: &StructureTensor,
    succ: &StructureTensor,
    dot: &StructureTensor,
    alpha: &MatrixS,
    beta: &MatrixS,
    space: usize,
) -> Vec<Axiom> {
    // Each identity is `lhs − rhs` built from (≺, ≻, ·, α, β) and (x, y, z).
    type Rule = fn(&Ops, &[Scalar], &[Scalar], &[Scalar]) -> Vector;
    let rules: [(&str, Rule); 7] = [
        ("tridend-8", |o, x, y, z| {
            let sum = o.total(y, z);
            vec_sub(&o.p(&o.p(x, y), &o.b(z)), &o.p(&o.a(x), &sum))
        }),
        ("tridend-9", |o, x, y, z| vec_sub(&o.p(&o.s(x, y), &o.b(z)), &o.s(&o.a(x), &o.p(y, z)))),
        ("tridend-10", |o, x, y, z| {
            let sum = o.total(x, y);
            vec_sub(&o.s(&o.a(x), &o.s(y, z)), &o.s(&sum, &o.b(z)))
        }),
        ("tridend-11", |o, x, y, z| vec_sub(&o.d(&o.a(x), &o.s(y, z)), &o.d(&o.p(x, y), &o.b(z)))),
        ("tridend-12", |o, x, y, z| vec_sub(&o.s(&o.a(x), &o.d(y, z)), &o.d(&o.s(x, y), &o.b(z)))),
        ("tridend-13", |o, x, y, z| vec_sub(&o.d(&o.a(x), &o.p(y, z)), &o.p(&o.d(x, y), &o.b(z)))),
        ("tridend-14", |o, x, y, z| vec_sub(&o.d(&o.a(x), &o.d(y, z)), &o.d(&o.d(x, y), &o.b(z)))),
    ];
    rules
        .into_iter()
        .map(|(id, rule)| {
            let ops = Ops {
                prec: prec.clone(),
                succ: succ.clone(),
                dot: dot.clone(),
                alpha: alpha.clone(),
                beta: beta.clone(),
            };
            Axiom::new(id, vec![space; 3], Box::new(move |v| rule(&ops, v[0], v[1], v[2])))
        })
        .collect()
}

struct Ops {
    prec: StructureTensor,
    succ: StructureTensor,
    dot: StructureTensor,
    alpha: MatrixS,
    beta: MatrixS,
}

impl Ops {
    fn p(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.prec.eval(x, y)
    }
    fn s(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.succ.eval(x, y)
    }
    fn d(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.dot.eval(x, y)
    }
    fn a(&self, x: &[Scalar]) -> Vector {
        self.alpha.apply(x)
    }
    fn b(&self, x: &[Scalar]) -> Vector {
        self.beta.apply(x)
    }
    fn total(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        vec_add(&vec_add(&self.p(x, y), &self.s(x, y)), &self.d(x, y))
    }
}

/// `α(x)⋆(y⋆z) = (x⋆y)⋆β(z)`
pub fn associativity_axiom(dot: &StructureTensor, alpha: &MatrixS, beta: &MatrixS, space: usize) -> Axiom {
    let (t, a, b) = (dot.clone(), alpha.clone(), beta.clone());
    Axiom::new(
        "bihom-associativity",
        vec![space; 3],
        Box::new(move |v| {
            let (x, y, z) = (v[0], v[1], v[2]);
            vec_sub(&t.eval(&a.apply(x), &t.eval(y, z)), &t.eval(&t.eval(x, y), &b.apply(z)))
        }),
    )
}

/// `x·y − α⁻¹β(y)·αβ⁻¹(x)` as a tensor.
pub(crate) fn commutator_tensor(dot: &StructureTensor, alpha: &MatrixS, beta: &MatrixS) -> Result<StructureTensor, CheckError> {
    let (ai, bi) = (invert(alpha, "alpha")?, invert(beta, "beta")?);
    let left = ai.mul(beta);
    let right = alpha.mul(&bi);
    Ok(StructureTensor::from_bilinear(dot.dim(), |x, y| {
        vec_sub(&dot.eval(x, y), &dot.eval(&left.apply(y), &right.apply(x)))
    }))
}

/// BiHom-Lie axioms for the commutator bracket of a product; needs regular maps.
pub fn product_axioms(dot: &StructureTensor, alpha: &MatrixS, beta: &MatrixS, space: usize) -> Result<Vec<Axiom>, CheckError> {
    let c = commutator_tensor(dot, alpha, beta)?;
    Ok(bihom_lie_axioms(&c, alpha, beta, space).into_iter().map(|a| a.prefixed("commutator/")).collect())
}

fn names(b: &AlgebraBundle) -> Vec<String> {
    b.basis.clone()
}

fn base_system(b: &AlgebraBundle, label: &str) -> Result<AxiomSystem, CheckError> {
    b.validate()?;
    let mut sys = AxiomSystem::new(format!("{} ({label})", b.name), b.parameters.clone(), vec![names(b)]);
    let ops: Vec<(&str, &StructureTensor)> = b.ops.iter().map(|(k, t)| (k.as_str(), t)).collect();
    sys.extend(structure_map_axioms(b.alpha()?, b.beta()?, &ops, 0));
    Ok(sys)
}

pub fn structure_maps_system(b: &AlgebraBundle) -> Result<AxiomSystem, CheckError> {
    base_system(b, "structure maps")
}

pub fn bihom_lie_system(b: &AlgebraBundle) -> Result<AxiomSystem, CheckError> {
    let mut sys = base_system(b, "bihom-lie")?;
    sys.extend(bihom_lie_axioms(b.op(OpName::Bracket)?, b.alpha()?, b.beta()?, 0));
    Ok(sys)
}

pub fn bihom_post_lie_system(b: &AlgebraBundle) -> Result<AxiomSystem, CheckError> {
    let mut sys = base_system(b, "bihom-post-lie")?;
    let (br, tr) = (b.op(OpName::Bracket)?, b.op(OpName::Triangle)?);
    let (a, be) = (b.alpha()?, b.beta()?);
    sys.extend(bihom_lie_axioms(br, a, be, 0));
    sys.extend(bihom_post_lie_axioms(br, tr, a, be, 0));
    Ok(sys)
}

pub fn bihom_lr_system(b: &AlgebraBundle) -> Result<AxiomSystem, CheckError> {
    let mut sys = base_system(b, "bihom-lr")?;
    sys.extend(bihom_lr_axioms(b.op(OpName::Dot)?, b.alpha()?, b.beta()?, 0));
    Ok(sys)
}

pub fn tridendriform_system(b: &AlgebraBundle) -> Result<AxiomSystem, CheckError> {
    let mut sys = base_system(b, "bihom-tridendriform")?;
    sys.extend(tridendriform_axioms(
        b.op(OpName::Prec)?,
        b.op(OpName::Succ)?,
        b.op(OpName::Dot)?,
        b.alpha()?,
        b.beta()?,
        0,
    ));
    Ok(sys)
}

pub fn associative_system(b: &AlgebraBundle) -> Result<AxiomSystem, CheckError> {
    let mut sys = base_system(b, "bihom-associative")?;
    sys.extend([associativity_axiom(b.op(OpName::Dot)?, b.alpha()?, b.beta()?, 0)]);
    Ok(sys)
}

/// A plain product: structure maps, Lie-admissibility of the commutator
/// (regular maps only) and associativity as an informational entry.
pub fn product_system(b: &AlgebraBundle) -> Result<AxiomSystem, CheckError> {
    let mut sys = base_system(b, "bihom-product")?;
    let (dot, a, be) = (b.op(OpName::Dot)?, b.alpha()?, b.beta()?);
    match product_axioms(dot, a, be, 0) {
        Ok(ax) => sys.extend(ax),
        Err(CheckError::Singular(m)) => {
            sys.notes.push(format!("{m} is singular: commutator bracket not defined, admissibility not checked"))
        }
        Err(e) => return Err(e),
    }
    sys.extend([associativity_axiom(dot, a, be, 0).advisory()]);
    Ok(sys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Kind;
    use crate::verify::{check_bihom_lie, check_bihom_lr};

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn lie_so3() -> AlgebraBundle {
        // [e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e2
        let mut t = StructureTensor::zero(3);
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            t.set(i, j, k, s(1));
            t.set(j, i, k, s(-1));
        }
        AlgebraBundle::new("so3", Kind::BiHomLie, vec!["e1".into(), "e2".into(), "e3".into()], vec![])
            .with_op(OpName::Bracket, t)
    }

    #[test]
    fn classical_lie_passes() {
        let r = check_bihom_lie(&lie_so3()).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.entry("bihom-jacobi").unwrap().checked, 27);
    }

    #[test]
    fn broken_jacobi_has_witnesses() {
        let mut b = lie_so3();
        let t = b.ops.get_mut(&OpName::Bracket).unwrap();
        // [e2,e3] = e1 + e2 keeps skew-symmetry but breaks Jacobi on (e1,e2,e3)
        t.set(1, 2, 1, s(1));
        t.set(2, 1, 1, s(-1));
        let r = check_bihom_lie(&b).unwrap();
        assert!(r.entry("bihom-skew-symmetry").unwrap().passed());
        let jac = r.entry("bihom-jacobi").unwrap();
        assert!(!jac.passed());
        assert!(!jac.witnesses.is_empty());
        assert!(jac.witnesses.iter().all(|w| w.residual.iter().any(|c| !c.is_zero())));
    }

    #[test]
    fn lr_examples() {
        let names = vec!["e1".to_string(), "e2".to_string()];
        let mut t = StructureTensor::zero(2);
        t.set(0, 0, 1, s(1));
        let b = AlgebraBundle::new("n", Kind::BiHomLr, names.clone(), vec![]).with_op(OpName::Dot, t);
        assert!(check_bihom_lr(&b).unwrap().passed());

        // e1·e2 = e1: every triple product vanishes or cancels, so both identities hold
        let mut t = StructureTensor::zero(2);
        t.set(0, 1, 0, s(1));
        let b = AlgebraBundle::new("m", Kind::BiHomLr, names.clone(), vec![]).with_op(OpName::Dot, t);
        assert!(check_bihom_lr(&b).unwrap().passed());

        // e_i·e_j = e_i satisfies lr-1 but not lr-2
        let t = StructureTensor::from_fn(2, |i, _| crate::linear::unit_vector(2, i));
        let b = AlgebraBundle::new("l", Kind::BiHomLr, names, vec![]).with_op(OpName::Dot, t);
        let r = check_bihom_lr(&b).unwrap();
        assert!(r.entry("lr-1").unwrap().passed());
        let e = r.entry("lr-2").unwrap();
        assert!(!e.passed());
        assert_eq!(e.witnesses[0].indices, vec![0, 1, 0]);
    }

    #[test]
    fn witness_cap_respected() {
        let mut b = lie_so3();
        b.ops.insert(OpName::Bracket, StructureTensor::from_fn(3, |_, _| vec![s(1), s(0), s(0)]));
        let v = crate::verify::Verifier::new(crate::verify::CheckOptions {
            witness_cap: 2,
            ..Default::default()
        });
        let r = v.check_bihom_lie(&b).unwrap();
        let e = r.entry("bihom-skew-symmetry").unwrap();
        assert_eq!(e.witnesses.len(), 2);
        assert!(e.failures > 2);
    }
}
