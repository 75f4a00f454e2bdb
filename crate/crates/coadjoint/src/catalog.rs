//! Built-in catalog: exact structure constants, distinguished ideals,
//! covectors and chart maps for the bundled examples.
//!
//! Chart conventions. Dual points are written in the coordinates of each
//! group's defining 1-form, e.g. `(p, z, r, s, t)` for the non-split
//! solvable group. Those coordinates pair with the algebra basis up to
//! signs; `chart_signs_*` records the sign each coordinate picks up when
//! read as a covector coefficient.
//!
//! The solvable algebras are stored in a rescaled basis in which the 2π
//! rotation constant of the matrix realization becomes 1 (the a-, c- and
//! f-directions are measured in full turns). This keeps every structure
//! constant rational and changes no kernel, rank or dimension answer. The
//! numeric fixtures use the matrix groups with the actual 2π.

use crate::lie::{Covector, LieAlgebra, Subspace};
use crate::rat::{rint, Rat};

pub const TAG_GALILEI: &str = "galilei_ext";
pub const TAG_SOLVABLE: &str = "solvable_nonsplit";
pub const TAG_COVER: &str = "solvable_cover";
pub const TAG_KODAIRA: &str = "kodaira_thurston";

pub fn fixture_tags() -> [&'static str; 4] {
    [TAG_GALILEI, TAG_SOLVABLE, TAG_COVER, TAG_KODAIRA]
}

/// Covector coefficients from chart coordinates (entrywise signs).
pub fn chart_to_covector(signs: &[i64], chart: &[Rat]) -> Covector {
    assert_eq!(signs.len(), chart.len());
    Covector::new(
        chart
            .iter()
            .zip(signs)
            .map(|(v, s)| v * rint(*s))
            .collect(),
    )
}

/// Chart coordinates from covector coefficients.
pub fn covector_to_chart(signs: &[i64], cov: &Covector) -> Vec<Rat> {
    assert_eq!(signs.len(), cov.coeffs.len());
    cov.coeffs
        .iter()
        .zip(signs)
        .map(|(v, s)| v * rint(*s))
        .collect()
}

// ---------------------------------------------------------------------------
// Non-split solvable group (upper triangular, complex rotation block).
// Basis (a, b1, b2, c, e, f); chart (p, z1, z2, r, s, t).
// ---------------------------------------------------------------------------

pub fn solvable_nonsplit_algebra() -> LieAlgebra {
    let mut g = LieAlgebra::from_brackets(
        6,
        &["a", "b1", "b2", "c", "e", "f"],
        &[
            (0, 1, 2, rint(1)),  // [a, b1] = b2
            (0, 2, 1, rint(-1)), // [a, b2] = -b1
            (0, 4, 5, rint(-1)), // [a, e]  = -f
            (3, 4, 5, rint(1)),  // [c, e]  = f
        ],
    )
    .expect("catalog table");
    g.chart_note = Some(
        "a, c, f measured in full turns (rotation constant 2*pi scaled to 1); \
         chart (p, z1, z2, r, s, t) pairs with signs (+,+,+,-,-,-)"
            .to_string(),
    );
    g
}

pub fn solvable_chart_signs() -> [i64; 6] {
    [1, 1, 1, -1, -1, -1]
}

/// The normal subgroup's algebra n = span{a, b1, b2, f} inside g.
pub fn solvable_nonsplit_ideal() -> Subspace {
    let g = solvable_nonsplit_algebra();
    Subspace::from_span(
        6,
        &[g.basis_vec(0), g.basis_vec(1), g.basis_vec(2), g.basis_vec(5)],
    )
}

/// The extension ǎ = (0,1,0,0,1) of the orbit covector, in chart (p,z,r,s,t).
pub fn solvable_nonsplit_acheck() -> Covector {
    chart_to_covector(
        &solvable_chart_signs(),
        &[rint(0), rint(1), rint(0), rint(0), rint(0), rint(1)],
    )
}

/// The declared vector-space complement span{c, e} of n in g.
pub fn solvable_nonsplit_complement() -> Subspace {
    let g = solvable_nonsplit_algebra();
    Subspace::from_span(6, &[g.basis_vec(3), g.basis_vec(4)])
}

/// Structure constants of the unrescaled (matrix) basis, as floats: the
/// rescaled table conjugated by diag(2π,1,1,2π,1,2π).
pub fn solvable_numeric_constants() -> Vec<f64> {
    numeric_constants(&solvable_nonsplit_algebra(), &solvable_scale())
}

pub fn solvable_scale() -> Vec<f64> {
    let tau = std::f64::consts::TAU;
    vec![tau, 1.0, 1.0, tau, 1.0, tau]
}

// ---------------------------------------------------------------------------
// Covering example: the subgroup with c = 0.
// Basis (a, b1, b2, e, f); chart (p, z1, z2, s, t).
// ---------------------------------------------------------------------------

pub fn solvable_cover_algebra() -> LieAlgebra {
    let mut h = LieAlgebra::from_brackets(
        5,
        &["a", "b1", "b2", "e", "f"],
        &[
            (0, 1, 2, rint(1)),
            (0, 2, 1, rint(-1)),
            (0, 3, 4, rint(-1)), // [a, e] = -f
        ],
    )
    .expect("catalog table");
    h.chart_note = Some(
        "subgroup of the non-split solvable group with c = 0; chart \
         (p, z1, z2, s, t) pairs with signs (+,+,+,-,-)"
            .to_string(),
    );
    h
}

pub fn cover_chart_signs() -> [i64; 5] {
    [1, 1, 1, -1, -1]
}

pub fn cover_ideal() -> Subspace {
    let h = solvable_cover_algebra();
    Subspace::from_span(5, &[h.basis_vec(0), h.basis_vec(1), h.basis_vec(2), h.basis_vec(4)])
}

pub fn cover_acheck() -> Covector {
    chart_to_covector(
        &cover_chart_signs(),
        &[rint(0), rint(1), rint(0), rint(0), rint(1)],
    )
}

pub fn cover_complement() -> Subspace {
    let h = solvable_cover_algebra();
    Subspace::from_span(5, &[h.basis_vec(3)])
}

pub fn cover_numeric_constants() -> Vec<f64> {
    numeric_constants(&solvable_cover_algebra(), &cover_scale())
}

pub fn cover_scale() -> Vec<f64> {
    let tau = std::f64::consts::TAU;
    vec![tau, 1.0, 1.0, 1.0, tau]
}

// ---------------------------------------------------------------------------
// The Heisenberg ideal of the non-split group, on its own.
// Basis (a, b1, b2, f); chart (p, z1, z2, t). Used by the Kodaira-Thurston
// fixture, where the acting group is N itself.
// ---------------------------------------------------------------------------

pub fn solvable_n_algebra() -> LieAlgebra {
    LieAlgebra::from_brackets(
        4,
        &["a", "b1", "b2", "f"],
        &[(0, 1, 2, rint(1)), (0, 2, 1, rint(-1))],
    )
    .expect("catalog table")
}

pub fn n_chart_signs() -> [i64; 4] {
    [1, 1, 1, -1]
}

pub fn n_numeric_constants() -> Vec<f64> {
    numeric_constants(&solvable_n_algebra(), &n_scale())
}

pub fn n_scale() -> Vec<f64> {
    let tau = std::f64::consts::TAU;
    vec![tau, 1.0, 1.0, tau]
}

pub fn kodaira_acheck() -> Covector {
    chart_to_covector(&n_chart_signs(), &[rint(0), rint(1), rint(0), rint(1)])
}

// ---------------------------------------------------------------------------
// Extended Galilei group (Bargmann). Basis order
// (J1,J2,J3, B1,B2,B3, C1,C2,C3, E, F); chart (L, G, P, E, M).
// ---------------------------------------------------------------------------

pub fn galilei_algebra() -> LieAlgebra {
    let one = rint(1);
    let neg = rint(-1);
    let mut br: Vec<(usize, usize, usize, Rat)> = vec![
        (0, 1, 2, one.clone()),
        (1, 2, 0, one.clone()),
        (0, 2, 1, neg.clone()),
    ];
    // [J_i, B_j] = eps_ijk B_k and likewise for C (offsets 3 and 6)
    for off in [3usize, 6] {
        br.push((0, off + 1, off + 2, one.clone()));
        br.push((0, off + 2, off + 1, neg.clone()));
        br.push((1, off, off + 2, neg.clone()));
        br.push((1, off + 2, off, one.clone()));
        br.push((2, off, off + 1, one.clone()));
        br.push((2, off + 1, off, neg.clone()));
    }
    // [B_i, E] = C_i
    for i in 0..3 {
        br.push((3 + i, 9, 6 + i, one.clone()));
    }
    // [B_i, C_i] = F
    for i in 0..3 {
        br.push((3 + i, 6 + i, 10, one.clone()));
    }
    let mut g = LieAlgebra::from_brackets(
        11,
        &["J1", "J2", "J3", "B1", "B2", "B3", "C1", "C2", "C3", "E", "F"],
        &br,
    )
    .expect("catalog table");
    g.chart_note = Some(
        "chart (L1..L3, G1..G3, P1..P3, E, M) pairs with signs \
         (+,+,+,-,-,-,+,+,+,-,-)"
            .to_string(),
    );
    g
}

pub fn galilei_chart_signs() -> [i64; 11] {
    [1, 1, 1, -1, -1, -1, 1, 1, 1, -1, -1]
}

/// The Heisenberg ideal span{B, C, F}.
pub fn galilei_ideal() -> Subspace {
    let g = galilei_algebra();
    let span: Vec<_> = [3, 4, 5, 6, 7, 8, 10].iter().map(|&i| g.basis_vec(i)).collect();
    Subspace::from_span(11, &span)
}

/// ǎ for total mass M = 1: the covector (0,…,0, M) in the chart.
pub fn galilei_acheck() -> Covector {
    let mut chart = vec![rint(0); 11];
    chart[10] = rint(1);
    chart_to_covector(&galilei_chart_signs(), &chart)
}

/// Complement span{J1, J2, J3, E} of the ideal.
pub fn galilei_complement() -> Subspace {
    let g = galilei_algebra();
    let span: Vec<_> = [0, 1, 2, 9].iter().map(|&i| g.basis_vec(i)).collect();
    Subspace::from_span(11, &span)
}

pub fn galilei_numeric_constants() -> Vec<f64> {
    numeric_constants(&galilei_algebra(), &vec![1.0; 11])
}

/// Unrescale: c_num[i][j][k] = c[i][j][k] * scale_i * scale_j / scale_k.
fn numeric_constants(alg: &LieAlgebra, scale: &[f64]) -> Vec<f64> {
    let n = alg.dim();
    let mut out = vec![0.0; n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let c = crate::rat::to_f64(alg.structure_constant(i, j, k));
                out[(i * n + j) * n + k] = c * scale[i] * scale[j] / scale[k];
            }
        }
    }
    out
}
