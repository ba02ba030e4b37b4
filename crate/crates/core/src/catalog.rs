//! Built-in instances. Composite entries are derived through the
//! constructors rather than stored as tables.

use crate::construct::{rota_baxter_induced, splitting_rota_baxter, twist_lie, ConstructError};
use crate::linear::{MatrixS, StructureTensor};
use crate::model::{AlgebraBundle, Kind, MapName, OpName};
use crate::scalar::Scalar;

/// Names accepted by [`emit`].
pub const NAMES: &[&str] = &["sl2-bihom", "sl2-post-lie", "tridend-2dim", "sl2", "heisenberg", "affine2", "abelian-N"];

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

/// Antisymmetric table from `[x_i, x_j] = Σ c x_k` entries with `i < j`.
fn lie_tensor(dim: usize, entries: &[(usize, usize, usize, Scalar)]) -> StructureTensor {
    let mut t = StructureTensor::zero(dim);
    for (i, j, k, c) in entries {
        t.set(*i, *j, *k, c.clone());
        t.set(*j, *i, *k, -c);
    }
    t
}

fn lie(name: &str, basis: Vec<String>, parameters: Vec<String>, t: StructureTensor) -> AlgebraBundle {
    AlgebraBundle::new(name, Kind::BiHomLie, basis, parameters).with_op(OpName::Bracket, t)
}

fn sl2_with(parameters: Vec<String>) -> AlgebraBundle {
    // basis X, Y, H: [X,Y]=H, [H,X]=2X, [H,Y]=-2Y
    let t = lie_tensor(3, &[(0, 1, 2, s(1)), (2, 0, 0, s(2)), (2, 1, 1, s(-2))]);
    lie("sl2", names(&["X", "Y", "H"]), parameters, t)
}

/// Classical sl(2) with identity structure maps.
pub fn sl2() -> AlgebraBundle {
    sl2_with(Vec::new())
}

/// sl(2) twisted by `α = diag(λ², λ⁻², 1)`, `β = diag(γ², γ⁻², 1)` over ℚ(λ, γ),
/// carrying the operator `R = diag(0, 4, 2)`.
pub fn emit_sl2_family() -> AlgebraBundle {
    let (l2, g2) = (Scalar::param(0).pow(2).expect("nonzero"), Scalar::param(1).pow(2).expect("nonzero"));
    let alpha = MatrixS::diagonal(vec![l2.clone(), l2.inv().expect("nonzero"), s(1)]);
    let beta = MatrixS::diagonal(vec![g2.clone(), g2.inv().expect("nonzero"), s(1)]);
    let base = sl2_with(names(&["lambda", "gamma"]));
    let mut b = twist_lie(&base, &alpha, &beta).expect("diagonal twists of sl2 are commuting morphisms");
    b.name = "sl2-bihom".into();
    b.with_map(MapName::R, MatrixS::diagonal(vec![s(0), s(4), s(2)]))
}

/// The post-Lie structure induced by `R` at weight −4 on [`emit_sl2_family`].
pub fn emit_sl2_post_lie() -> AlgebraBundle {
    let mut b = rota_baxter_induced(&emit_sl2_family(), &s(-4)).expect("R is Rota-Baxter of weight -4");
    b.name = "sl2-post-lie".into();
    b
}

/// Two-dimensional tri-dendriform algebra over ℚ(a):
/// `e2≺e2 = e2≻e2 = a e1`, `e2·e2 = −a e1`, `α(e2) = e1+e2`, `β(e2) = 2e1+e2`.
pub fn emit_tridend_2dim() -> AlgebraBundle {
    let a = Scalar::param(0);
    let single = |c: Scalar| {
        let mut t = StructureTensor::zero(2);
        t.set(1, 1, 0, c);
        t
    };
    let alpha = MatrixS::from_rows(vec![vec![s(1), s(1)], vec![s(0), s(1)]]).expect("2x2");
    let beta = MatrixS::from_rows(vec![vec![s(1), s(2)], vec![s(0), s(1)]]).expect("2x2");
    AlgebraBundle::new("tridend-2dim", Kind::BiHomTridendriform, names(&["e1", "e2"]), names(&["a"]))
        .with_op(OpName::Prec, single(a.clone()))
        .with_op(OpName::Succ, single(a.clone()))
        .with_op(OpName::Dot, single(-&a))
        .with_map(MapName::Alpha, alpha)
        .with_map(MapName::Beta, beta)
}

/// Heisenberg algebra `[x,y] = z`.
pub fn heisenberg() -> AlgebraBundle {
    lie("heisenberg", names(&["x", "y", "z"]), Vec::new(), lie_tensor(3, &[(0, 1, 2, s(1))]))
}

/// The two-dimensional non-abelian Lie algebra `[e1,e2] = e2`.
pub fn affine2() -> AlgebraBundle {
    lie("affine2", names(&["e1", "e2"]), Vec::new(), lie_tensor(2, &[(0, 1, 1, s(1))]))
}

pub fn abelian(n: usize) -> AlgebraBundle {
    let basis = (1..=n).map(|i| format!("e{i}")).collect();
    lie(&format!("abelian-{n}"), basis, Vec::new(), StructureTensor::zero(n))
}

/// `base` with `R` set to the splitting operator of the partition.
pub fn splitting_rb(
    base: &AlgebraBundle,
    first: &[usize],
    second: &[usize],
    weight: &Scalar,
) -> Result<AlgebraBundle, ConstructError> {
    let r = splitting_rota_baxter(base, first, second, weight)?;
    let mut b = base.clone().with_map(MapName::R, r);
    b.name = format!("splitting-rb({})", base.name);
    Ok(b)
}

/// Look up a parameter-free catalog entry by name.
pub fn emit(name: &str) -> Option<AlgebraBundle> {
    match name {
        "sl2-bihom" => Some(emit_sl2_family()),
        "sl2-post-lie" => Some(emit_sl2_post_lie()),
        "tridend-2dim" => Some(emit_tridend_2dim()),
        "sl2" => Some(sl2()),
        "heisenberg" => Some(heisenberg()),
        "affine2" => Some(affine2()),
        _ => name
            .strip_prefix("abelian-")
            .and_then(|n| n.parse::<usize>().ok())
            .filter(|n| (1..=16).contains(n))
            .map(abelian),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::Verifier;

    #[test]
    fn every_entry_passes_its_checker() {
        for name in ["sl2-bihom", "sl2-post-lie", "tridend-2dim", "sl2", "heisenberg", "affine2", "abelian-3"] {
            let b = emit(name).unwrap();
            b.validate().unwrap();
            let r = Verifier::default().check_kind(&b, None).unwrap();
            assert!(r.passed(), "{name}: {}", r.to_text());
        }
    }

    #[test]
    fn unknown_names() {
        assert!(emit("nope").is_none());
        assert!(emit("abelian-0").is_none());
    }
}
