//! Small named quivers and modules used throughout the tests, docs and CLI examples.

use std::sync::Arc;

use crate::field::{ExactMatrix, FieldSpec, Scalar};
use crate::ginzburg::{GinzburgPresentation, Mode};
use crate::pmod::ProperModule;
use crate::quiver::{Arrow, GradedQuiver, LocalData, Vertex};

fn vertex(id: &str) -> Vertex {
    Vertex {
        id: id.into(),
        local: LocalData::Sphere,
    }
}

/// An arrow of the given degree with sign `+1`.
pub fn arrow(id: &str, source: &str, target: &str, degree: i64) -> Arrow {
    Arrow {
        id: id.into(),
        source: source.into(),
        target: target.into(),
        degree,
        sign: 1,
    }
}

/// Sphere vertices and the given arrows.
pub fn quiver(n: i64, field: FieldSpec, vertices: &[&str], arrows: Vec<Arrow>) -> GradedQuiver {
    GradedQuiver::new(n, field, vertices.iter().map(|v| vertex(v)).collect(), arrows).expect("fixture quiver is valid")
}

/// Vertices `x, y, z`; arrows `a: x→y`, `b: y→x`, `c: x→z`, `d: y→z`, all of degree 0, `n = 3`.
pub fn ex_a(field: FieldSpec) -> GradedQuiver {
    quiver(
        3,
        field,
        &["x", "y", "z"],
        vec![
            arrow("a", "x", "y", 0),
            arrow("b", "y", "x", 0),
            arrow("c", "x", "z", 0),
            arrow("d", "y", "z", 0),
        ],
    )
}

/// Vertices `u, w`; arrows `a, b: u→w` and `c, d: w→u`, all of degree 0, `n = 3`.
pub fn ex_b(field: FieldSpec) -> GradedQuiver {
    quiver(
        3,
        field,
        &["u", "w"],
        vec![
            arrow("a", "u", "w", 0),
            arrow("b", "u", "w", 0),
            arrow("c", "w", "u", 0),
            arrow("d", "w", "u", 0),
        ],
    )
}

/// One vertex `v` with a degree-0 loop `e`, `n = 3`.
pub fn single_loop(field: FieldSpec) -> GradedQuiver {
    quiver(3, field, &["v"], vec![arrow("e", "v", "v", 0)])
}

/// The path `p → q → r` with degree-0 arrows `a, b`, `n = 3`.
pub fn a3(field: FieldSpec) -> GradedQuiver {
    quiver(
        3,
        field,
        &["p", "q", "r"],
        vec![arrow("a", "p", "q", 0), arrow("b", "q", "r", 0)],
    )
}

/// The commutator-mode presentation of a quiver, shared behind an `Arc`.
pub fn presentation(q: &GradedQuiver) -> Arc<GinzburgPresentation> {
    Arc::new(GinzburgPresentation::new(q, Mode::Commutator).expect("commutator mode accepts every quiver"))
}

/// The one-dimensional module at `v` in degree 0 with every generator acting by zero.
pub fn simple(pres: &Arc<GinzburgPresentation>, v: &str) -> ProperModule {
    ProperModule::from_ids(pres.clone(), &[(v, 0, 1)], vec![]).expect("simple module is valid")
}

/// The `r x r` Jordan block with eigenvalue `lambda`.
pub fn jordan(field: FieldSpec, r: usize, lambda: &Scalar) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(field, r, r);
    for i in 0..r {
        m.set(i, i, lambda.clone());
        if i + 1 < r {
            m.set(i, i + 1, field.one());
        }
    }
    m
}

/// `M_{r,λ}` on [`ex_a`]: `k^r` at `x` and `y` in degree 0, `x̄_a` the Jordan block,
/// `x̄_b` the identity, nothing at `z`.
pub fn m_r_lambda(pres: &Arc<GinzburgPresentation>, r: usize, lambda: &Scalar) -> ProperModule {
    let field = pres.field();
    ProperModule::from_ids(
        pres.clone(),
        &[("x", 0, r), ("y", 0, r)],
        vec![
            ("x_a", 0, jordan(field, r, lambda)),
            ("x_b", 0, ExactMatrix::identity(field, r)),
        ],
    )
    .expect("M_{r,λ} is valid")
}

/// `M_λ = M_{1,λ}` on [`ex_a`].
pub fn m_lambda(pres: &Arc<GinzburgPresentation>, lambda: &Scalar) -> ProperModule {
    m_r_lambda(pres, 1, lambda)
}

/// `M_λ ⊕ M_z` on [`ex_a`], with `c` and `d` acting by zero.
pub fn m_lambda_plus_z(pres: &Arc<GinzburgPresentation>, lambda: &Scalar) -> ProperModule {
    m_lambda(pres, lambda)
        .direct_sum(&simple(pres, "z"))
        .expect("same presentation")
}

/// On [`single_loop`]: `k^2` at `v` with the loop acting by `[[0, 1], [0, 0]]`.
pub fn nilpotent_loop(pres: &Arc<GinzburgPresentation>) -> ProperModule {
    let field = pres.field();
    ProperModule::from_ids(
        pres.clone(),
        &[("v", 0, 2)],
        vec![("x_e", 0, ExactMatrix::from_i64(field, &[&[0, 1], &[0, 0]]))],
    )
    .expect("nilpotent loop module is valid")
}
