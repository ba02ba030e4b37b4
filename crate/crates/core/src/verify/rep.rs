use std::sync::Arc;

use crate::linear::{vec_add, vec_sub, MatrixS, StructureTensor, Vector};
use crate::model::{family_apply, AlgebraBundle, Kind, MapName, OpName, RepresentationBundle};
use crate::scalar::Scalar;

use super::algebra::{bihom_lie_axioms, bihom_post_lie_axioms, structure_map_axioms};
use super::{check_regular, invert, Axiom, AxiomSystem, CheckError};

const A: usize = 0;
const V: usize = 1;

/// Left-multiplication operators `x_i ↦ matrix of op(x_i, ·)`.
pub(crate) fn left_operators(t: &StructureTensor) -> Vec<MatrixS> {
    let n = t.dim();
    (0..n).map(|i| MatrixS::from_columns(n, &(0..n).map(|j| t.product(i, j)).collect::<Vec<_>>())).collect()
}

/// `(A, ad, α, β)` where `ad(x) = [x, ·]`.
pub fn adjoint_representation(b: &AlgebraBundle) -> Result<RepresentationBundle, CheckError> {
    let bracket = b.op(OpName::Bracket)?;
    Ok(RepresentationBundle::new(
        b.clone(),
        b.basis.clone(),
        left_operators(bracket),
        b.alpha()?.clone(),
        b.beta()?.clone(),
    ))
}

/// `(A, [·,·], ad, α, β)` as a module algebra over itself.
pub fn adjoint_module_algebra(b: &AlgebraBundle) -> Result<RepresentationBundle, CheckError> {
    let mut r = adjoint_representation(b)?;
    r.vbracket = Some(b.op(OpName::Bracket)?.clone());
    Ok(r)
}

/// Shared data of a representation, captured by the axiom closures.
struct RepData {
    bracket: StructureTensor,
    triangle: Option<StructureTensor>,
    alpha: MatrixS,
    beta: MatrixS,
    rho: Vec<MatrixS>,
    mu: Vec<MatrixS>,
    nu: Vec<MatrixS>,
    phi: MatrixS,
    psi: MatrixS,
    vbracket: Option<StructureTensor>,
    t: Option<MatrixS>,
    weight: Scalar,
}

impl RepData {
    fn new(r: &RepresentationBundle) -> Result<Self, CheckError> {
        let alg = &r.algebra;
        Ok(RepData {
            bracket: alg.op(OpName::Bracket)?.clone(),
            triangle: alg.ops.get(&OpName::Triangle).cloned(),
            alpha: alg.alpha()?.clone(),
            beta: alg.beta()?.clone(),
            rho: r.rho.clone(),
            mu: r.mu.clone().unwrap_or_default(),
            nu: r.nu.clone().unwrap_or_default(),
            phi: r.phi.clone(),
            psi: r.psi.clone(),
            vbracket: r.vbracket.clone(),
            t: r.t.clone(),
            weight: r.weight_or_zero(),
        })
    }

    fn rho(&self, x: &[Scalar], v: &[Scalar]) -> Vector {
        family_apply(&self.rho, x, v)
    }
    fn mu(&self, x: &[Scalar], v: &[Scalar]) -> Vector {
        family_apply(&self.mu, x, v)
    }
    fn nu(&self, x: &[Scalar], v: &[Scalar]) -> Vector {
        family_apply(&self.nu, x, v)
    }
    fn a(&self, x: &[Scalar]) -> Vector {
        self.alpha.apply(x)
    }
    fn b(&self, x: &[Scalar]) -> Vector {
        self.beta.apply(x)
    }
    fn phi(&self, v: &[Scalar]) -> Vector {
        self.phi.apply(v)
    }
    fn psi(&self, v: &[Scalar]) -> Vector {
        self.psi.apply(v)
    }
    fn br(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.bracket.eval(x, y)
    }
    fn tri(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.triangle.as_ref().map(|t| t.eval(x, y)).unwrap_or_else(|| vec![Scalar::zero(); x.len()])
    }
}

type Rule2 = fn(&RepData, &[Scalar], &[Scalar]) -> Vector;
type Rule3 = fn(&RepData, &[Scalar], &[Scalar], &[Scalar]) -> Vector;

fn ax2(d: &Arc<RepData>, id: &str, slots: [usize; 2], rule: Rule2) -> Axiom {
    let d = Arc::clone(d);
    Axiom::new(id, slots.to_vec(), Box::new(move |v| rule(&d, v[0], v[1])))
}

fn ax3(d: &Arc<RepData>, id: &str, slots: [usize; 3], rule: Rule3) -> Axiom {
    let d = Arc::clone(d);
    Axiom::new(id, slots.to_vec(), Box::new(move |v| rule(&d, v[0], v[1], v[2])))
}

fn two_spaces(r: &RepresentationBundle, label: &str) -> AxiomSystem {
    AxiomSystem::new(
        format!("{} ({label})", r.algebra.name),
        r.algebra.parameters.clone(),
        vec![r.algebra.basis.clone(), r.vbasis.clone()],
    )
}

fn phi_psi_commute(d: &Arc<RepData>) -> Axiom {
    let d = Arc::clone(d);
    Axiom::new(
        "phi-psi-commute",
        vec![V],
        Box::new(move |v| vec_sub(&d.phi(&d.psi(v[0])), &d.psi(&d.phi(v[0])))),
    )
}

/// The three representation identities over the algebra's bracket.
fn lie_rep_axioms(d: &Arc<RepData>) -> Vec<Axiom> {
    vec![
        phi_psi_commute(d),
        // ρ(αx)φ = φρ(x)
        ax2(d, "rep-1", [A, V], |d, x, v| vec_sub(&d.rho(&d.a(x), &d.phi(v)), &d.phi(&d.rho(x, v)))),
        // ρ(βx)ψ = ψρ(x)
        ax2(d, "rep-2", [A, V], |d, x, v| vec_sub(&d.rho(&d.b(x), &d.psi(v)), &d.psi(&d.rho(x, v)))),
        // ρ([βx,y])ψ = ρ(αβx)ρ(y) − ρ(βy)ρ(αx)
        ax3(d, "rep-3", [A, A, V], |d, x, y, v| {
            let lhs = d.rho(&d.br(&d.b(x), y), &d.psi(v));
            let r1 = d.rho(&d.a(&d.b(x)), &d.rho(y, v));
            let r2 = d.rho(&d.b(y), &d.rho(&d.a(x), v));
            vec_sub(&lhs, &vec_sub(&r1, &r2))
        }),
    ]
}

fn check_family_shapes(r: &RepresentationBundle) -> Result<(), CheckError> {
    r.validate()?;
    Ok(())
}

pub fn lie_representation_system(r: &RepresentationBundle) -> Result<AxiomSystem, CheckError> {
    check_family_shapes(r)?;
    let alg = &r.algebra;
    let mut sys = two_spaces(r, "representation");
    let ops: Vec<(&str, &StructureTensor)> = vec![("bracket", alg.op(OpName::Bracket)?)];
    sys.extend_prefixed("algebra/", structure_map_axioms(alg.alpha()?, alg.beta()?, &ops, A));
    sys.extend_prefixed("algebra/", bihom_lie_axioms(alg.op(OpName::Bracket)?, alg.alpha()?, alg.beta()?, A));
    let d = Arc::new(RepData::new(r)?);
    sys.extend(lie_rep_axioms(&d));
    Ok(sys)
}

pub fn module_k_algebra_system(r: &RepresentationBundle) -> Result<AxiomSystem, CheckError> {
    let vb = r.vbracket.as_ref().ok_or(CheckError::Missing("vbracket"))?;
    let mut sys = lie_representation_system(r)?;
    sys.structure = format!("{} (module algebra)", r.algebra.name);
    sys.extend_prefixed("module/", structure_map_axioms(&r.phi, &r.psi, &[("vbracket", vb)], V));
    sys.extend_prefixed("module/", bihom_lie_axioms(vb, &r.phi, &r.psi, V));
    let d = Arc::new(RepData::new(r)?);
    // ρ(αβx){u,v} = {ρ(βx)u, ψv} + {ψu, ρ(αx)v}
    sys.extend([ax3(&d, "module-k-algebra", [A, V, V], |d, x, u, v| {
        let vb = d.vbracket.as_ref().expect("vbracket checked");
        let lhs = d.rho(&d.a(&d.b(x)), &vb.eval(u, v));
        let r1 = vb.eval(&d.rho(&d.b(x), u), &d.psi(v));
        let r2 = vb.eval(&d.psi(u), &d.rho(&d.a(x), v));
        vec_sub(&lhs, &vec_add(&r1, &r2))
    })]);
    Ok(sys)
}

pub fn o_operator_system(r: &RepresentationBundle) -> Result<AxiomSystem, CheckError> {
    let t = r.t.as_ref().ok_or(CheckError::Missing("T"))?;
    let phi_inv = invert(&r.phi, "phi")?;
    let psi_inv = invert(&r.psi, "psi")?;
    let weight = r.weight_or_zero();
    let mut sys = if weight.is_zero() {
        lie_representation_system(r)?
    } else {
        if r.vbracket.is_none() {
            return Err(CheckError::Missing("vbracket (required for nonzero weight)"));
        }
        module_k_algebra_system(r)?
    };
    sys.structure = format!("{} (O-operator, weight {})", r.algebra.name, weight.to_text(&r.algebra.parameters));
    let d = Arc::new(RepData::new(r)?);
    // Tφ = αT, Tψ = βT
    let (t1, a) = (t.clone(), r.algebra.alpha()?.clone());
    let phi = r.phi.clone();
    sys.extend([Axiom::new(
        "o-operator-intertwine-alpha",
        vec![V],
        Box::new(move |v| vec_sub(&t1.apply(&phi.apply(v[0])), &a.apply(&t1.apply(v[0])))),
    )]);
    let (t2, b) = (t.clone(), r.algebra.beta()?.clone());
    let psi = r.psi.clone();
    sys.extend([Axiom::new(
        "o-operator-intertwine-beta",
        vec![V],
        Box::new(move |v| vec_sub(&t2.apply(&psi.apply(v[0])), &b.apply(&t2.apply(v[0])))),
    )]);
    // [Tu,Tv] = T(ρ(Tu)v − ρ(Tφ⁻¹ψv)φψ⁻¹u + λ{u,v})
    let left = phi_inv.mul(&r.psi);
    let right = r.phi.mul(&psi_inv);
    sys.extend([Axiom::new(
        "o-operator",
        vec![V, V],
        Box::new(move |args| {
            let (u, v) = (args[0], args[1]);
            let t = d.t.as_ref().expect("T checked");
            let (tu, tv) = (t.apply(u), t.apply(v));
            let mut inner = vec_sub(&d.rho(&tu, v), &d.rho(&t.apply(&left.apply(v)), &right.apply(u)));
            if !d.weight.is_zero() {
                let vb = d.vbracket.as_ref().expect("vbracket checked");
                inner = vec_add(&inner, &crate::linear::vec_scale(&d.weight, &vb.eval(u, v)));
            }
            vec_sub(&d.br(&tu, &tv), &t.apply(&inner))
        }),
    )]);
    Ok(sys)
}

/// Rota-Baxter operators: the O-operator identity for `T = R` on the adjoint
/// module algebra. Without invertible structure maps only weight 0 is
/// supported, through `[Rx,Ry] = R([Rx,y] + [x,Ry])`.
pub fn rota_baxter_system(b: &AlgebraBundle, weight: &Scalar) -> Result<AxiomSystem, CheckError> {
    b.validate()?;
    let rmap = b.map(MapName::R).map_err(|_| CheckError::Missing("map R"))?.clone();
    let label = format!("{} (Rota-Baxter, weight {})", b.name, weight.to_text(&b.parameters));
    if check_regular(b) {
        let mut r = adjoint_module_algebra(b)?;
        r.t = Some(rmap);
        r.weight = Some(weight.clone());
        let mut sys = o_operator_system(&r)?;
        sys.structure = label;
        for ax in &mut sys.axioms {
            ax.id = match ax.id.as_str() {
                "o-operator-intertwine-alpha" => "R-commutes-alpha".into(),
                "o-operator-intertwine-beta" => "R-commutes-beta".into(),
                "o-operator" => "rota-baxter".into(),
                _ => ax.id.clone(),
            };
        }
        return Ok(sys);
    }
    if !weight.is_zero() {
        let which = if invert(b.alpha()?, "alpha").is_err() { "alpha" } else { "beta" };
        return Err(CheckError::Singular(which.into()));
    }
    let mut sys = AxiomSystem::new(label, b.parameters.clone(), vec![b.basis.clone()]);
    let bracket = b.op(OpName::Bracket)?;
    let ops: Vec<(&str, &StructureTensor)> = vec![("bracket", bracket)];
    sys.extend_prefixed("algebra/", structure_map_axioms(b.alpha()?, b.beta()?, &ops, A));
    sys.extend_prefixed("algebra/", bihom_lie_axioms(bracket, b.alpha()?, b.beta()?, A));
    for (id, m) in [("R-commutes-alpha", b.alpha()?.clone()), ("R-commutes-beta", b.beta()?.clone())] {
        let r = rmap.clone();
        sys.extend([Axiom::new(id, vec![A], Box::new(move |v| vec_sub(&r.apply(&m.apply(v[0])), &m.apply(&r.apply(v[0])))))]);
    }
    let (r, t) = (rmap, bracket.clone());
    sys.extend([Axiom::new(
        "rota-baxter",
        vec![A, A],
        Box::new(move |v| {
            let (rx, ry) = (r.apply(v[0]), r.apply(v[1]));
            let inner = vec_add(&t.eval(&rx, v[1]), &t.eval(v[0], &ry));
            vec_sub(&t.eval(&rx, &ry), &r.apply(&inner))
        }),
    )]);
    sys.notes.push("structure maps not invertible: weight-0 identity checked directly".into());
    Ok(sys)
}

pub fn post_lie_representation_system(r: &RepresentationBundle) -> Result<AxiomSystem, CheckError> {
    check_family_shapes(r)?;
    if r.algebra.kind != Kind::BiHomPostLie && !r.algebra.ops.contains_key(&OpName::Triangle) {
        return Err(CheckError::Missing("triangle on the algebra"));
    }
    r.mu.as_ref().ok_or(CheckError::Missing("mu"))?;
    r.nu.as_ref().ok_or(CheckError::Missing("nu"))?;
    let alg = &r.algebra;
    let mut sys = two_spaces(r, "post-Lie representation");
    let ops: Vec<(&str, &StructureTensor)> = alg.ops.iter().map(|(k, t)| (k.as_str(), t)).collect();
    let (br, tr, a, b) = (alg.op(OpName::Bracket)?, alg.op(OpName::Triangle)?, alg.alpha()?, alg.beta()?);
    sys.extend_prefixed("algebra/", structure_map_axioms(a, b, &ops, A));
    sys.extend_prefixed("algebra/", bihom_lie_axioms(br, a, b, A));
    sys.extend_prefixed("algebra/", bihom_post_lie_axioms(br, tr, a, b, A));
    let d = Arc::new(RepData::new(r)?);
    sys.extend(lie_rep_axioms(&d));
    sys.extend([
        ax2(&d, "mu-alpha-phi", [A, V], |d, x, v| vec_sub(&d.mu(&d.a(x), &d.phi(v)), &d.phi(&d.mu(x, v)))),
        ax2(&d, "mu-beta-psi", [A, V], |d, x, v| vec_sub(&d.mu(&d.b(x), &d.psi(v)), &d.psi(&d.mu(x, v)))),
        // read as ν(αx)φ = φν(x), mirroring the μ relation
        ax2(&d, "nu-alpha-phi(balanced)", [A, V], |d, x, v| {
            vec_sub(&d.nu(&d.a(x), &d.phi(v)), &d.phi(&d.nu(x, v)))
        }),
        ax2(&d, "nu-beta-psi", [A, V], |d, x, v| vec_sub(&d.nu(&d.b(x), &d.psi(v)), &d.psi(&d.nu(x, v)))),
    ]);

    // ν([x,y])φψ = ρ(βx)ν(y)φ − ρ(βy)ν(x)ψ
    let beta_form = ax3(&d, "rep-post-lie-1-beta-form", [A, A, V], |d, x, y, v| {
        let lhs = d.nu(&d.br(x, y), &d.phi(&d.psi(v)));
        let r1 = d.rho(&d.b(x), &d.nu(y, &d.phi(v)));
        let r2 = d.rho(&d.b(y), &d.nu(x, &d.psi(v)));
        vec_sub(&lhs, &vec_sub(&r1, &r2))
    });
    match (invert(a, "alpha"), invert(&r.psi, "psi")) {
        (Ok(ai), Ok(psi_inv)) => {
            // ν([x,y])φψ = ρ(βx)ν(y)φ − ρ(α⁻¹β²y)φψ⁻¹ν(x)ψ, the form forced by the semidirect product
            let shift = ai.mul(b).mul(b);
            let twist = r.phi.mul(&psi_inv);
            let d2 = Arc::clone(&d);
            sys.extend([Axiom::new(
                "rep-post-lie-1",
                vec![A, A, V],
                Box::new(move |args| {
                    let (x, y, v) = (args[0], args[1], args[2]);
                    let lhs = d2.nu(&d2.br(x, y), &d2.phi(&d2.psi(v)));
                    let r1 = d2.rho(&d2.b(x), &d2.nu(y, &d2.phi(v)));
                    let r2 = d2.rho(&shift.apply(y), &twist.apply(&d2.nu(x, &d2.psi(v))));
                    vec_sub(&lhs, &vec_sub(&r1, &r2))
                }),
            )]);
            sys.extend([beta_form.advisory()]);
            sys.notes.push(
                "rep-post-lie-1 uses rho(alpha^-1 beta^2 (y)) phi psi^-1 in its last term; \
                 the variant with rho(beta(y)) is reported as informational"
                    .into(),
            );
        }
        _ => {
            sys.extend([beta_form]);
            sys.notes.push("alpha or psi singular: rep-post-lie-1 checked in its rho(beta(y)) form".into());
        }
    }

    sys.extend([
        // ρ(βx⊳y)ψ = μ(αβx)ρ(y) − ρ(βy)μ(αx)
        ax3(&d, "rep-post-lie-2", [A, A, V], |d, x, y, v| {
            let lhs = d.rho(&d.tri(&d.b(x), y), &d.psi(v));
            let r1 = d.mu(&d.a(&d.b(x)), &d.rho(y, v));
            let r2 = d.rho(&d.b(y), &d.mu(&d.a(x), v));
            vec_sub(&lhs, &vec_sub(&r1, &r2))
        }),
        // μ([βx,αy])ψ = μ(αβx)μ(αy) − μ(βx⊳αy)ψ − μ(αβy)μ(αx) + μ(βy⊳αx)ψ
        ax3(&d, "rep-post-lie-3", [A, A, V], |d, x, y, v| {
            let (bx, ax, by, ay) = (d.b(x), d.a(x), d.b(y), d.a(y));
            let lhs = d.mu(&d.br(&bx, &ay), &d.psi(v));
            let t1 = d.mu(&d.a(&bx), &d.mu(&ay, v));
            let t2 = d.mu(&d.tri(&bx, &ay), &d.psi(v));
            let t3 = d.mu(&d.a(&by), &d.mu(&ax, v));
            let t4 = d.mu(&d.tri(&by, &ax), &d.psi(v));
            let rhs = vec_add(&vec_sub(&vec_sub(&t1, &t2), &t3), &t4);
            vec_sub(&lhs, &rhs)
        }),
        // ν(βy)ρ(βx)φ = μ(αβx)ν(y)φ − ν(βy)μ(βx)φ − ν(αx⊳y)φψ + ν(βy)ν(αx)ψ
        ax3(&d, "rep-post-lie-4", [A, A, V], |d, x, y, v| {
            let (bx, ax, by) = (d.b(x), d.a(x), d.b(y));
            let lhs = d.nu(&by, &d.rho(&bx, &d.phi(v)));
            let t1 = d.mu(&d.a(&bx), &d.nu(y, &d.phi(v)));
            let t2 = d.nu(&by, &d.mu(&bx, &d.phi(v)));
            let t3 = d.nu(&d.tri(&ax, y), &d.phi(&d.psi(v)));
            let t4 = d.nu(&by, &d.nu(&ax, &d.psi(v)));
            let rhs = vec_add(&vec_sub(&vec_sub(&t1, &t2), &t3), &t4);
            vec_sub(&lhs, &rhs)
        }),
    ]);
    sys.notes.push("nu-alpha-phi reads the unbalanced relation as nu(alpha(x)) phi = phi nu(x)".into());
    Ok(sys)
}
