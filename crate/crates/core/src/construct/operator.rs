use std::collections::BTreeMap;

use crate::linear::{vec_scale, vec_sub, zero_vector, MatrixS, StructureTensor, Vector};
use crate::model::{family_apply, AlgebraBundle, Kind, MapName, OpName, RepresentationBundle};
use crate::scalar::Scalar;
use crate::verify::{Axiom, AxiomSystem, CheckOptions, Verifier};

use super::algebra::sub_adjacent_tensor;
use super::{inverse_of, require, ConstructError};

fn require_o_operator(r: &RepresentationBundle) -> Result<(), ConstructError> {
    require(Verifier::default().check_o_operator(r)?, "T is an O-operator")
}

/// `λ{u,v}` or zero when the module carries no bracket.
fn scaled_vbracket(r: &RepresentationBundle, u: &[Scalar], v: &[Scalar]) -> Vector {
    match &r.vbracket {
        Some(vb) if !r.weight_or_zero().is_zero() => vec_scale(&r.weight_or_zero(), &vb.eval(u, v)),
        _ => zero_vector(r.vdim),
    }
}

fn bundle_on(r: &RepresentationBundle, name: String, basis: Vec<String>) -> AlgebraBundle {
    AlgebraBundle {
        name,
        dim: basis.len(),
        basis,
        parameters: r.algebra.parameters.clone(),
        ops: BTreeMap::new(),
        maps: BTreeMap::new(),
        kind: Kind::BiHomPostLie,
    }
}

/// Post-Lie structure on `V`: `{u,v} = λ{u,v}_V`, `u⊳v = ρ(T u) v`, maps `φ`, `ψ`.
pub fn o_operator_induced(r: &RepresentationBundle) -> Result<AlgebraBundle, ConstructError> {
    require_o_operator(r)?;
    let t = r.t.as_ref().expect("checked by the O-operator check");
    let bracket = StructureTensor::from_bilinear(r.vdim, |u, v| scaled_vbracket(r, u, v));
    let tri = StructureTensor::from_bilinear(r.vdim, |u, v| family_apply(&r.rho, &t.apply(u), v));
    let mut out = bundle_on(r, format!("o-induced({})", r.algebra.name), r.vbasis.clone())
        .with_op(OpName::Bracket, bracket)
        .with_op(OpName::Triangle, tri);
    out.maps.insert(MapName::Alpha, r.phi.clone());
    out.maps.insert(MapName::Beta, r.psi.clone());
    Ok(out)
}

/// The induced structure on the image `T(V) ⊆ A`, in the basis `T(v_j)`.
pub fn induced_on_image(r: &RepresentationBundle) -> Result<AlgebraBundle, ConstructError> {
    let t = r.t.as_ref().ok_or(crate::verify::CheckError::Missing("T"))?;
    let rank = t.rank();
    if rank < r.vdim {
        return Err(ConstructError::NotInjective { rank, vdim: r.vdim });
    }
    require_o_operator(r)?;
    let left = t.left_inverse()?;
    let image: Vec<Vector> = (0..r.vdim).map(|j| t.column(j)).collect();
    // coordinates in the T(v_j) basis of an ambient vector known to lie in T(V)
    let coords = |w: &[Scalar], what: &str| -> Result<Vector, ConstructError> {
        let c = left.apply(w);
        if t.apply(&c) != w {
            return Err(ConstructError::Invalid(format!("{what} leaves the image of T")));
        }
        Ok(c)
    };
    let n = r.vdim;
    let mut bracket = StructureTensor::zero(n);
    let mut tri = StructureTensor::zero(n);
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (&image[i], &image[j]);
            let (u, v) = (left.apply(x), left.apply(y));
            // {T u, T v} = λ T({u,v}_V),  T u ⊳ T v = T(ρ(T u) v)
            let b = t.apply(&scaled_vbracket(r, &u, &v));
            let d = t.apply(&family_apply(&r.rho, x, &v));
            bracket.set_product(i, j, &coords(&b, "bracket")?);
            tri.set_product(i, j, &coords(&d, "connection")?);
        }
    }
    let mut maps = Vec::new();
    for m in [MapName::Alpha, MapName::Beta] {
        let f = r.algebra.map(m)?;
        let cols = image.iter().map(|x| coords(&f.apply(x), m.as_str())).collect::<Result<Vec<_>, _>>()?;
        maps.push((m, MatrixS::from_columns(n, &cols)));
    }
    let basis = r.vbasis.iter().map(|v| format!("T_{v}")).collect();
    let mut out = bundle_on(r, format!("image({})", r.algebra.name), basis)
        .with_op(OpName::Bracket, bracket)
        .with_op(OpName::Triangle, tri);
    out.maps.extend(maps);
    Ok(out)
}

/// `{x,y} = λT([T⁻¹x, T⁻¹y]_V)`, `x⊳y = T(ρ(x)T⁻¹y)` on `A`, certified to
/// satisfy `x⊳y − α⁻¹β(y)⊳αβ⁻¹(x) + {x,y} = [x,y]`.
pub fn compatible_from_invertible_o(r: &RepresentationBundle) -> Result<AlgebraBundle, ConstructError> {
    let t = r.t.as_ref().ok_or(crate::verify::CheckError::Missing("T"))?;
    if !t.is_square() {
        return Err(ConstructError::NotRegular("T".into()));
    }
    let tinv = inverse_of(t, "T")?;
    require_o_operator(r)?;
    let alg = &r.algebra;
    let bracket = StructureTensor::from_bilinear(alg.dim, |x, y| t.apply(&scaled_vbracket(r, &tinv.apply(x), &tinv.apply(y))));
    let tri = StructureTensor::from_bilinear(alg.dim, |x, y| t.apply(&family_apply(&r.rho, x, &tinv.apply(y))));
    let mut out = AlgebraBundle {
        name: format!("compatible({})", alg.name),
        dim: alg.dim,
        basis: alg.basis.clone(),
        parameters: alg.parameters.clone(),
        ops: BTreeMap::new(),
        maps: BTreeMap::new(),
        kind: Kind::BiHomPostLie,
    }
    .with_op(OpName::Bracket, bracket)
    .with_op(OpName::Triangle, tri);
    out.maps.insert(MapName::Alpha, alg.alpha()?.clone());
    out.maps.insert(MapName::Beta, alg.beta()?.clone());

    let induced = sub_adjacent_tensor(&out)?;
    let original = alg.op(OpName::Bracket)?.clone();
    let mut sys = AxiomSystem::new(format!("{} (compatibility)", out.name), out.parameters.clone(), vec![out.basis.clone()]);
    sys.axioms.push(Axiom::new(
        "compatibility",
        vec![0, 0],
        Box::new(move |v| vec_sub(&induced.eval(v[0], v[1]), &original.eval(v[0], v[1]))),
    ));
    let report = sys.run(&CheckOptions::default());
    if !report.passed() {
        return Err(ConstructError::PostconditionFailed { check: "compatibility".into(), report: Box::new(report) });
    }
    Ok(out)
}
