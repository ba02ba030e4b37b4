use std::collections::BTreeMap;

use crate::linear::{vec_add, vec_concat, vec_sub, MatrixS, StructureTensor};
use crate::model::{family_apply, AlgebraBundle, Kind, MapName, OpName, RepresentationBundle};
use crate::verify::{
    adjoint_module_algebra, adjoint_representation, check_regular, lie_representation_system,
    post_lie_representation_system, CheckOptions, Verifier,
};

use super::algebra::{require_classical, sub_adjacent, twist_lie, twist_post_lie};
use super::{disjoint_names, inverse_of, regular_inverses, require, ConstructError};

/// Recorded with every π-representation.
pub const PI_READING_NOTE: &str = "pi(x) = rho(x) + mu(x) - nu(alpha beta^-1 (x)) phi^-1 psi; \
     the middle term is read as mu(x), the only type-correct reading";

fn left_ops(t: &StructureTensor) -> Vec<MatrixS> {
    let n = t.dim();
    (0..n).map(|i| MatrixS::from_columns(n, &(0..n).map(|j| t.product(i, j)).collect::<Vec<_>>())).collect()
}

fn right_ops(t: &StructureTensor) -> Vec<MatrixS> {
    let n = t.dim();
    (0..n).map(|i| MatrixS::from_columns(n, &(0..n).map(|j| t.product(j, i)).collect::<Vec<_>>())).collect()
}

/// `(A, ad, L⊳, R⊳, α, β)`
pub fn adjoint_post_representation(post: &AlgebraBundle) -> Result<RepresentationBundle, ConstructError> {
    let mut r = adjoint_representation(post)?;
    let tri = post.op(OpName::Triangle)?;
    r.mu = Some(left_ops(tri));
    r.nu = Some(right_ops(tri));
    Ok(r)
}

/// The canonical representations of a BiHom-Lie or BiHom-post-Lie algebra.
pub fn canonical_representations(b: &AlgebraBundle) -> Result<Vec<RepresentationBundle>, ConstructError> {
    b.validate()?;
    match b.kind {
        Kind::BiHomLie => Ok(vec![adjoint_module_algebra(b)?]),
        Kind::BiHomPostLie => {
            let mut out = vec![adjoint_representation(b)?, adjoint_post_representation(b)?];
            if check_regular(b) {
                let sub = sub_adjacent(b)?;
                let mut l = RepresentationBundle::new(
                    sub,
                    b.basis.clone(),
                    left_ops(b.op(OpName::Triangle)?),
                    b.alpha()?.clone(),
                    b.beta()?.clone(),
                );
                l.vbracket = Some(b.op(OpName::Bracket)?.clone());
                out.push(l);
            }
            Ok(out)
        }
        other => Err(ConstructError::Invalid(format!("no canonical representations for kind {other}"))),
    }
}

/// Shared shape of all three semidirect products on `A ⊕ V`.
fn semidirect(
    r: &RepresentationBundle,
    with_vbracket: bool,
    post: bool,
) -> Result<AlgebraBundle, ConstructError> {
    r.validate()?;
    let alg = &r.algebra;
    let (ai, _) = regular_inverses(alg)?;
    inverse_of(&r.phi, "phi")?;
    let psi_inv = inverse_of(&r.psi, "psi")?;
    let (alpha, beta) = (alg.alpha()?, alg.beta()?);
    let br = alg.op(OpName::Bracket)?;
    let vb = if with_vbracket {
        Some(r.vbracket.as_ref().ok_or(crate::verify::CheckError::Missing("vbracket"))?)
    } else {
        None
    };
    let (n, m) = (alg.dim, r.vdim);
    let shift = ai.mul(beta);
    let twist = r.phi.mul(&psi_inv);
    // [x+u, y+v] = [x,y] + ρ(x)v − ρ(α⁻¹β(y))φψ⁻¹u (+ {u,v})
    let bracket = StructureTensor::from_bilinear(n + m, |p, q| {
        let (x, u) = p.split_at(n);
        let (y, v) = q.split_at(n);
        let mut bottom = vec_sub(&family_apply(&r.rho, x, v), &family_apply(&r.rho, &shift.apply(y), &twist.apply(u)));
        if let Some(vb) = vb {
            bottom = vec_add(&bottom, &vb.eval(u, v));
        }
        vec_concat(&br.eval(x, y), &bottom)
    });
    let basis = disjoint_names(&alg.basis, &r.vbasis, "_V");
    let (label, kind) = match (post, with_vbracket) {
        (true, _) => ("semidirect-post-lie", Kind::BiHomPostLie),
        (false, true) => ("semidirect-module", Kind::BiHomLie),
        (false, false) => ("semidirect", Kind::BiHomLie),
    };
    let mut out = AlgebraBundle {
        name: format!("{label}({})", alg.name),
        dim: n + m,
        basis,
        parameters: alg.parameters.clone(),
        ops: BTreeMap::new(),
        maps: BTreeMap::new(),
        kind,
    }
    .with_op(OpName::Bracket, bracket);
    if post {
        let tr = alg.op(OpName::Triangle)?;
        let mu = r.mu.as_ref().ok_or(crate::verify::CheckError::Missing("mu"))?;
        let nu = r.nu.as_ref().ok_or(crate::verify::CheckError::Missing("nu"))?;
        // (x+u) ⊳ (y+v) = x⊳y + μ(x)v + ν(y)u
        let tri = StructureTensor::from_bilinear(n + m, |p, q| {
            let (x, u) = p.split_at(n);
            let (y, v) = q.split_at(n);
            vec_concat(&tr.eval(x, y), &vec_add(&family_apply(mu, x, v), &family_apply(nu, y, u)))
        });
        out.ops.insert(OpName::Triangle, tri);
    }
    out.maps.insert(MapName::Alpha, MatrixS::block_diag(alpha, &r.phi));
    out.maps.insert(MapName::Beta, MatrixS::block_diag(beta, &r.psi));
    Ok(out)
}

pub fn semidirect_lie(r: &RepresentationBundle) -> Result<AlgebraBundle, ConstructError> {
    semidirect(r, false, false)
}

pub fn semidirect_module_algebra(r: &RepresentationBundle) -> Result<AlgebraBundle, ConstructError> {
    semidirect(r, true, false)
}

pub fn semidirect_post_lie(r: &RepresentationBundle) -> Result<AlgebraBundle, ConstructError> {
    if !r.algebra.ops.contains_key(&OpName::Triangle) {
        return Err(crate::verify::CheckError::Missing("triangle on the algebra").into());
    }
    semidirect(r, false, true)
}

/// Intertwining relations between the twist maps, checked on the untwisted data.
fn require_intertwining(
    r: &RepresentationBundle,
    a: &MatrixS,
    b: &MatrixS,
    f: &MatrixS,
    g: &MatrixS,
    post: bool,
) -> Result<(), ConstructError> {
    let mut probe = r.clone();
    probe.algebra.maps.insert(MapName::Alpha, a.clone());
    probe.algebra.maps.insert(MapName::Beta, b.clone());
    probe.phi = f.clone();
    probe.psi = g.clone();
    let mut sys = if post { post_lie_representation_system(&probe)? } else { lie_representation_system(&probe)? };
    let keep = [
        "phi-psi-commute",
        "rep-1",
        "rep-2",
        "mu-alpha-phi",
        "mu-beta-psi",
        "nu-alpha-phi(balanced)",
        "nu-beta-psi",
    ];
    sys.axioms.retain(|ax| keep.contains(&ax.id.as_str()));
    sys.notes.clear();
    require(sys.run(&CheckOptions::default()), "twist maps intertwine the representation")
}

fn require_classical_rep(r: &RepresentationBundle) -> Result<(), ConstructError> {
    require_classical(&r.algebra)?;
    for (label, m) in [("phi", &r.phi), ("psi", &r.psi)] {
        if !m.is_identity() {
            return Err(ConstructError::NotClassical(label.into()));
        }
    }
    Ok(())
}

/// `x ↦ family(a x)·g`
fn twisted_family(maps: &[MatrixS], a: &MatrixS, g: &MatrixS, vdim: usize) -> Vec<MatrixS> {
    (0..a.cols())
        .map(|i| {
            let ax = a.column(i);
            let cols: Vec<_> = (0..vdim).map(|j| family_apply(maps, &ax, &g.column(j))).collect();
            MatrixS::from_columns(vdim, &cols)
        })
        .collect()
}

/// `ρ̃(x)(v) = ρ(a(x))(g(v))` over the twisted algebra.
pub fn twist_lie_representation(
    r: &RepresentationBundle,
    a: &MatrixS,
    b: &MatrixS,
    f: &MatrixS,
    g: &MatrixS,
) -> Result<RepresentationBundle, ConstructError> {
    r.validate()?;
    require_classical_rep(r)?;
    require(Verifier::default().check_lie_representation(r)?, "input is a Lie representation")?;
    require_intertwining(r, a, b, f, g, false)?;
    let algebra = twist_lie(&r.algebra, a, b)?;
    let rho = twisted_family(&r.rho, a, g, r.vdim);
    let mut out = RepresentationBundle::new(algebra, r.vbasis.clone(), rho, f.clone(), g.clone());
    out.vbracket = None;
    Ok(out)
}

/// Twist `ρ`, `μ`, `ν` alike over the twisted post-Lie algebra.
pub fn twist_post_lie_representation(
    r: &RepresentationBundle,
    a: &MatrixS,
    b: &MatrixS,
    f: &MatrixS,
    g: &MatrixS,
) -> Result<RepresentationBundle, ConstructError> {
    r.validate()?;
    require_classical_rep(r)?;
    require(Verifier::default().check_post_lie_representation(r)?, "input is a post-Lie representation")?;
    require_intertwining(r, a, b, f, g, true)?;
    let algebra = twist_post_lie(&r.algebra, a, b)?;
    let mu = r.mu.as_ref().expect("checked");
    let nu = r.nu.as_ref().expect("checked");
    let mut out =
        RepresentationBundle::new(algebra, r.vbasis.clone(), twisted_family(&r.rho, a, g, r.vdim), f.clone(), g.clone());
    out.mu = Some(twisted_family(mu, a, g, r.vdim));
    out.nu = Some(twisted_family(nu, a, g, r.vdim));
    Ok(out)
}

/// The operators `π(x_i) = ρ(x_i) + μ(x_i) − ν(αβ⁻¹(x_i))φ⁻¹ψ`, without
/// checking that the input is a post-Lie representation.
pub fn pi_operators(r: &RepresentationBundle) -> Result<Vec<MatrixS>, ConstructError> {
    r.validate()?;
    let alg = &r.algebra;
    let (_, bi) = regular_inverses(alg)?;
    let phi_inv = inverse_of(&r.phi, "phi")?;
    let mu = r.mu.as_ref().ok_or(crate::verify::CheckError::Missing("mu"))?;
    let nu = r.nu.as_ref().ok_or(crate::verify::CheckError::Missing("nu"))?;
    let shift = alg.alpha()?.mul(&bi);
    let tail = phi_inv.mul(&r.psi);
    Ok((0..alg.dim)
        .map(|i| {
            let x = shift.column(i);
            let cols: Vec<_> = (0..r.vdim).map(|j| family_apply(nu, &x, &tail.column(j))).collect();
            r.rho[i].add(&mu[i]).sub(&MatrixS::from_columns(r.vdim, &cols))
        })
        .collect())
}

/// `(V, π, φ, ψ)` over the sub-adjacent algebra.
pub fn pi_representation(r: &RepresentationBundle) -> Result<RepresentationBundle, ConstructError> {
    require(Verifier::default().check_post_lie_representation(r)?, "input is a post-Lie representation")?;
    inverse_of(&r.psi, "psi")?;
    let pi = pi_operators(r)?;
    Ok(RepresentationBundle::new(sub_adjacent(&r.algebra)?, r.vbasis.clone(), pi, r.phi.clone(), r.psi.clone()))
}
