use std::collections::BTreeMap;

use crate::linear::{is_morphism, maps_commute, vec_add, vec_concat, vec_sub, MatrixS, StructureTensor};
use crate::model::{AlgebraBundle, Kind, MapName, OpName};
use crate::scalar::{Rational, Scalar};
use crate::verify::Verifier;

use super::{doubled_names, regular_inverses, require, ConstructError};

fn output(src: &AlgebraBundle, name: String, kind: Kind, basis: Vec<String>) -> AlgebraBundle {
    AlgebraBundle {
        name,
        dim: basis.len(),
        basis,
        parameters: src.parameters.clone(),
        ops: BTreeMap::new(),
        maps: BTreeMap::new(),
        kind,
    }
}

fn with_maps(mut b: AlgebraBundle, alpha: MatrixS, beta: MatrixS) -> AlgebraBundle {
    b.maps.insert(MapName::Alpha, alpha);
    b.maps.insert(MapName::Beta, beta);
    b
}

fn carry_maps(src: &AlgebraBundle, name: String, kind: Kind) -> Result<AlgebraBundle, ConstructError> {
    let b = output(src, name, kind, src.basis.clone());
    Ok(with_maps(b, src.alpha()?.clone(), src.beta()?.clone()))
}

pub(crate) fn require_classical(b: &AlgebraBundle) -> Result<(), ConstructError> {
    for m in [MapName::Alpha, MapName::Beta] {
        if !b.map(m)?.is_identity() {
            return Err(ConstructError::NotClassical(m.to_string()));
        }
    }
    Ok(())
}

/// Commuting twist maps that are morphisms of every listed op.
pub(crate) fn require_twist_maps(
    ops: &[(OpName, &StructureTensor)],
    a: &MatrixS,
    b: &MatrixS,
    labels: (&str, &str),
) -> Result<(), ConstructError> {
    if !maps_commute(a, b)? {
        return Err(ConstructError::NotCommuting(format!("{} and {}", labels.0, labels.1)));
    }
    for (label, m) in [(labels.0, a), (labels.1, b)] {
        for (op, t) in ops {
            if !is_morphism(t, m)? {
                return Err(ConstructError::NotMorphism { map: label.into(), op: op.to_string() });
            }
        }
    }
    Ok(())
}

/// `(x, y) ↦ t(a x, b y)`
fn twisted(t: &StructureTensor, a: &MatrixS, b: &MatrixS) -> StructureTensor {
    StructureTensor::from_bilinear(t.dim(), |x, y| t.eval(&a.apply(x), &b.apply(y)))
}

/// `[x,y]' = [a x, b y]` with structure maps `a`, `b`.
pub fn twist_lie(lie: &AlgebraBundle, a: &MatrixS, b: &MatrixS) -> Result<AlgebraBundle, ConstructError> {
    require_classical(lie)?;
    let bracket = lie.op(OpName::Bracket)?;
    require(Verifier::default().check_bihom_lie(lie)?, "input is a Lie algebra")?;
    require_twist_maps(&[(OpName::Bracket, bracket)], a, b, ("alpha", "beta"))?;
    let out = output(lie, format!("twist({})", lie.name), Kind::BiHomLie, lie.basis.clone())
        .with_op(OpName::Bracket, twisted(bracket, a, b));
    Ok(with_maps(out, a.clone(), b.clone()))
}

/// Twist both torsion and connection of a classical post-Lie algebra.
pub fn twist_post_lie(post: &AlgebraBundle, a: &MatrixS, b: &MatrixS) -> Result<AlgebraBundle, ConstructError> {
    require_classical(post)?;
    let (br, tr) = (post.op(OpName::Bracket)?, post.op(OpName::Triangle)?);
    require(Verifier::default().check_bihom_post_lie(post)?, "input is a post-Lie algebra")?;
    require_twist_maps(&[(OpName::Bracket, br), (OpName::Triangle, tr)], a, b, ("alpha", "beta"))?;
    let out = output(post, format!("twist({})", post.name), Kind::BiHomPostLie, post.basis.clone())
        .with_op(OpName::Bracket, twisted(br, a, b))
        .with_op(OpName::Triangle, twisted(tr, a, b));
    Ok(with_maps(out, a.clone(), b.clone()))
}

/// `x ⊳ y = [y, x]` with the bracket kept as torsion.
pub fn flip_post_lie(lie: &AlgebraBundle) -> Result<AlgebraBundle, ConstructError> {
    let bracket = lie.op(OpName::Bracket)?;
    require(Verifier::default().check_bihom_lie(lie)?, "input is BiHom-Lie")?;
    Ok(carry_maps(lie, format!("flip({})", lie.name), Kind::BiHomPostLie)?
        .with_op(OpName::Bracket, bracket.clone())
        .with_op(OpName::Triangle, bracket.opposite()))
}

/// `{x,y} = x⊳y − α⁻¹β(y)⊳αβ⁻¹(x) + [x,y]`
pub(crate) fn sub_adjacent_tensor(post: &AlgebraBundle) -> Result<StructureTensor, ConstructError> {
    let (ai, bi) = regular_inverses(post)?;
    let (br, tr) = (post.op(OpName::Bracket)?, post.op(OpName::Triangle)?);
    let left = ai.mul(post.beta()?);
    let right = post.alpha()?.mul(&bi);
    Ok(StructureTensor::from_bilinear(post.dim, |x, y| {
        let s = vec_sub(&tr.eval(x, y), &tr.eval(&left.apply(y), &right.apply(x)));
        vec_add(&s, &br.eval(x, y))
    }))
}

pub fn sub_adjacent(post: &AlgebraBundle) -> Result<AlgebraBundle, ConstructError> {
    post.validate()?;
    let t = sub_adjacent_tensor(post)?;
    Ok(carry_maps(post, format!("sub-adjacent({})", post.name), Kind::BiHomLie)?.with_op(OpName::Bracket, t))
}

fn half() -> Scalar {
    Scalar::from_rational(Rational::new(1.into(), 2.into()))
}

/// `x∘y = x⊳y + ½[x,y]`
pub fn admissible_product(post: &AlgebraBundle) -> Result<AlgebraBundle, ConstructError> {
    post.validate()?;
    regular_inverses(post)?;
    let (br, tr) = (post.op(OpName::Bracket)?, post.op(OpName::Triangle)?);
    let dot = tr.add(&br.scale(&half()));
    Ok(carry_maps(post, format!("admissible({})", post.name), Kind::BiHomProduct)?.with_op(OpName::Dot, dot))
}

/// `[x,y] = x·y − α⁻¹β(y)·αβ⁻¹(x)`
pub fn commutator_bihom_lie(prod: &AlgebraBundle) -> Result<AlgebraBundle, ConstructError> {
    prod.validate()?;
    regular_inverses(prod)?;
    let c = commutator(prod.op(OpName::Dot)?, prod)?;
    Ok(carry_maps(prod, format!("commutator({})", prod.name), Kind::BiHomLie)?.with_op(OpName::Bracket, c))
}

fn commutator(dot: &StructureTensor, b: &AlgebraBundle) -> Result<StructureTensor, ConstructError> {
    let (ai, bi) = regular_inverses(b)?;
    let left = ai.mul(b.beta()?);
    let right = b.alpha()?.mul(&bi);
    Ok(StructureTensor::from_bilinear(b.dim, |x, y| vec_sub(&dot.eval(x, y), &dot.eval(&left.apply(y), &right.apply(x)))))
}

/// Torsion `−[·,·]`, connection `⊳ + [·,·]`.
pub fn black_transform(post: &AlgebraBundle) -> Result<AlgebraBundle, ConstructError> {
    require(Verifier::default().check_bihom_post_lie(post)?, "input is BiHom-post-Lie")?;
    let (br, tr) = (post.op(OpName::Bracket)?, post.op(OpName::Triangle)?);
    Ok(carry_maps(post, format!("black({})", post.name), Kind::BiHomPostLie)?
        .with_op(OpName::Bracket, br.neg())
        .with_op(OpName::Triangle, tr.add(br)))
}

/// The double bracket on `A × A` with maps `α×α`, `β×β`.
pub fn double_bracket(post: &AlgebraBundle) -> Result<AlgebraBundle, ConstructError> {
    post.validate()?;
    let (ai, bi) = regular_inverses(post)?;
    let (br, tr) = (post.op(OpName::Bracket)?, post.op(OpName::Triangle)?);
    let (alpha, beta) = (post.alpha()?, post.beta()?);
    let left = ai.mul(beta);
    let right = alpha.mul(&bi);
    let n = post.dim;
    let t = StructureTensor::from_bilinear(2 * n, |p, q| {
        let (a, x) = p.split_at(n);
        let (b, y) = q.split_at(n);
        let lb = left.apply(b);
        let first = vec_add(&vec_sub(&tr.eval(a, b), &tr.eval(&lb, &right.apply(a))), &br.eval(a, b));
        let second = vec_add(&vec_sub(&tr.eval(a, y), &tr.eval(&lb, &right.apply(x))), &br.eval(x, y));
        vec_concat(&first, &second)
    });
    let out = output(post, format!("double({})", post.name), Kind::BiHomLie, doubled_names(&post.basis))
        .with_op(OpName::Bracket, t);
    Ok(with_maps(out, MatrixS::block_diag(alpha, alpha), MatrixS::block_diag(beta, beta)))
}

/// `x⊳y = −x·y`, bracket the commutator of the dot product.
pub fn lr_to_post(lr: &AlgebraBundle) -> Result<AlgebraBundle, ConstructError> {
    lr.validate()?;
    regular_inverses(lr)?;
    require(Verifier::default().check_bihom_lr(lr)?, "input is BiHom-LR")?;
    let dot = lr.op(OpName::Dot)?;
    Ok(carry_maps(lr, format!("lr-to-post({})", lr.name), Kind::BiHomPostLie)?
        .with_op(OpName::Bracket, commutator(dot, lr)?)
        .with_op(OpName::Triangle, dot.neg()))
}

/// Bracket from `·`, connection `x⊳y = x≻y − α⁻¹β(y)≺αβ⁻¹(x)`.
pub fn tridend_to_post(td: &AlgebraBundle) -> Result<AlgebraBundle, ConstructError> {
    td.validate()?;
    let (ai, bi) = regular_inverses(td)?;
    require(Verifier::default().check_tridendriform(td)?, "input is BiHom-tri-dendriform")?;
    let (prec, succ, dot) = (td.op(OpName::Prec)?, td.op(OpName::Succ)?, td.op(OpName::Dot)?);
    let left = ai.mul(td.beta()?);
    let right = td.alpha()?.mul(&bi);
    let tri = StructureTensor::from_bilinear(td.dim, |x, y| vec_sub(&succ.eval(x, y), &prec.eval(&left.apply(y), &right.apply(x))));
    Ok(carry_maps(td, format!("tridend-to-post({})", td.name), Kind::BiHomPostLie)?
        .with_op(OpName::Bracket, commutator(dot, td)?)
        .with_op(OpName::Triangle, tri))
}

/// `x⋆y = x≺y + x≻y + x·y`
pub fn tridend_to_assoc(td: &AlgebraBundle) -> Result<AlgebraBundle, ConstructError> {
    require(Verifier::default().check_tridendriform(td)?, "input is BiHom-tri-dendriform")?;
    let star = td.op(OpName::Prec)?.add(td.op(OpName::Succ)?).add(td.op(OpName::Dot)?);
    Ok(carry_maps(td, format!("tridend-to-assoc({})", td.name), Kind::BiHomProduct)?.with_op(OpName::Dot, star))
}

/// Torsion `λ[·,·]`, connection `x⊳y = [R(x), y]`.
pub fn rota_baxter_induced(lie: &AlgebraBundle, weight: &Scalar) -> Result<AlgebraBundle, ConstructError> {
    let report = Verifier::default().check_rota_baxter(lie, weight)?;
    require(report, "R is a Rota-Baxter operator")?;
    let bracket = lie.op(OpName::Bracket)?;
    let r = lie.map(MapName::R)?;
    let tri = StructureTensor::from_bilinear(lie.dim, |x, y| bracket.eval(&r.apply(x), y));
    Ok(carry_maps(lie, format!("rota-baxter({})", lie.name), Kind::BiHomPostLie)?
        .with_op(OpName::Bracket, bracket.scale(weight))
        .with_op(OpName::Triangle, tri))
}

/// `R = −λ·(projection onto span I₂ along span I₁)` for a splitting of the
/// algebra into two subalgebras invariant under α and β.
pub fn splitting_rota_baxter(
    lie: &AlgebraBundle,
    first: &[usize],
    second: &[usize],
    weight: &Scalar,
) -> Result<MatrixS, ConstructError> {
    lie.validate()?;
    let n = lie.dim;
    let mut owner = vec![None; n];
    for (part, idx) in [(1usize, first), (2, second)] {
        for &i in idx {
            if i >= n {
                return Err(ConstructError::Invalid(format!("basis index {i} out of range")));
            }
            if owner[i].replace(part).is_some() {
                return Err(ConstructError::Invalid(format!("basis index {i} listed twice")));
            }
        }
    }
    if let Some(i) = owner.iter().position(Option::is_none) {
        return Err(ConstructError::Invalid(format!("basis element {} is in neither part", lie.basis[i])));
    }
    let bracket = lie.op(OpName::Bracket)?;
    let outside = |v: &[Scalar], part: usize| v.iter().enumerate().any(|(k, c)| !c.is_zero() && owner[k] != Some(part));
    for (part, idx) in [(1usize, first), (2, second)] {
        for &i in idx {
            for &j in idx {
                if outside(&bracket.product(i, j), part) {
                    return Err(ConstructError::Invalid(format!(
                        "part {part} is not a subalgebra: [{},{}] leaves its span",
                        lie.basis[i], lie.basis[j]
                    )));
                }
            }
            for m in [MapName::Alpha, MapName::Beta] {
                if outside(&lie.map(m)?.column(i), part) {
                    return Err(ConstructError::Invalid(format!(
                        "part {part} is not invariant under {m}: image of {} leaves its span",
                        lie.basis[i]
                    )));
                }
            }
        }
    }
    let minus = -weight;
    Ok(MatrixS::diagonal((0..n).map(|i| if owner[i] == Some(2) { minus.clone() } else { Scalar::zero() }).collect()))
}
