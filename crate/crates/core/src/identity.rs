//! Symbolic certificate for the factorization of the discriminant.
//!
//! `X` is built as `L·diag(m,n,o,p)·U` over [`Poly16`], the discriminant is
//! expanded from its 2x2 minors, and the result is compared term by term with
//! `m²n²(F·G + H²)` for the transcribed `F`, `G`, `H`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{serde_rational, MatQ, Rational};
use crate::poly::{Monomial, Poly16, NVARS};
use crate::totalpos::{lw_compose_with, random_params, LowerChart, LwParams};
use crate::transversal::discriminant_from_minors;

pub type PolyMat = [[Poly16; 4]; 4];

const F_TEXT: &str = "a*c*e*h*i*j*m*o + a*c*e*h*i*l*m*o + 2*c*d*e*h*i*j*m*o + c*d*e*h*i*l*m*o \
    + a*b*h*j*m*p + a*b*h*l*m*p + a*b*k*l*m*p + a*e*h*j*m*p + a*e*h*l*m*p + a*e*k*l*m*p \
    + c*e*h*i*n*o + d*e*h*j*m*p + d*e*h*l*m*p + d*e*k*l*m*p + b*h*n*p + 2*b*k*n*p \
    + e*h*n*p + e*k*n*p";

const G_TEXT: &str = "a*c*e*h*i*j*m*o + a*c*e*h*i*l*m*o + c*d*e*h*i*l*m*o + a*b*h*j*m*p \
    + a*b*h*l*m*p + a*b*k*l*m*p + a*e*h*j*m*p + a*e*h*l*m*p + a*e*k*l*m*p + c*e*h*i*n*o \
    + d*e*h*j*m*p + d*e*h*l*m*p + d*e*k*l*m*p + b*h*n*p + e*h*n*p + e*k*n*p";

const H_TEXT: &str = "b*k*n*p - c*d*e*h*i*j*m*o";

fn v(c: char) -> Poly16 {
    Poly16::var(c)
}

fn mat_mul(x: &PolyMat, y: &PolyMat) -> PolyMat {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (0..4).fold(Poly16::zero(), |acc, k| acc + &x[i][k] * &y[k][j]))
    })
}

/// `L·diag(m,n,o,p)·U` with polynomial entries.
pub fn symbolic_x(chart: LowerChart) -> PolyMat {
    let (z, one) = (Poly16::zero, Poly16::one);
    let l43 = match chart {
        LowerChart::Standard => v('i'),
        LowerChart::AsPrinted => v('k'),
    };
    let lower: PolyMat = [
        [one(), z(), z(), z()],
        [v('g') + v('j') + v('l'), one(), z(), z()],
        [
            &v('h') * &v('j') + &v('h') * &v('l') + &v('k') * &v('l'),
            v('h') + v('k'),
            one(),
            z(),
        ],
        [
            &(&v('i') * &v('k')) * &v('l'),
            &v('i') * &v('k'),
            l43,
            one(),
        ],
    ];
    let diag: PolyMat = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            if i == j {
                v(['m', 'n', 'o', 'p'][i])
            } else {
                z()
            }
        })
    });
    let upper: PolyMat = [
        [
            one(),
            v('f') + v('d') + v('a'),
            &v('a') * &v('b') + &v('a') * &v('e') + &v('d') * &v('e'),
            &(&v('a') * &v('b')) * &v('c'),
        ],
        [z(), one(), v('b') + v('e'), &v('b') * &v('c')],
        [z(), z(), one(), v('c')],
        [z(), z(), z(), one()],
    ];
    mat_mul(&mat_mul(&lower, &diag), &upper)
}

fn minor2(x: &PolyMat, r: (usize, usize), c: (usize, usize)) -> Poly16 {
    let (r1, r2, c1, c2) = (r.0 - 1, r.1 - 1, c.0 - 1, c.1 - 1);
    &x[r1][c1] * &x[r2][c2] - &x[r1][c2] * &x[r2][c1]
}

/// Coefficients `(A, B, C)` of the eliminated quadratic, symbolically.
pub fn symbolic_quadratic(chart: LowerChart) -> (Poly16, Poly16, Poly16) {
    let x = symbolic_x(chart);
    let rows = [(1, 3), (1, 4), (2, 3), (2, 4)];
    let f: Vec<Poly16> = rows.iter().map(|&r| minor2(&x, r, (1, 2))).collect();
    let h: Vec<Poly16> = rows.iter().map(|&r| minor2(&x, r, (3, 4))).collect();
    let a = &f[0] * &h[1] - &f[1] * &h[0];
    let b = &f[0] * &h[3] + &f[2] * &h[1] - &f[1] * &h[2] - &f[3] * &h[0];
    let c = &f[2] * &h[3] - &f[3] * &h[2];
    (a, b, c)
}

/// The discriminant expanded from the minor formula.
pub fn symbolic_d(chart: LowerChart) -> Poly16 {
    let x = symbolic_x(chart);
    let rows = [(1, 3), (1, 4), (2, 3), (2, 4)];
    let da: Vec<Poly16> = rows.iter().map(|&r| minor2(&x, r, (1, 2))).collect();
    let db: Vec<Poly16> = rows.iter().map(|&r| minor2(&x, r, (3, 4))).collect();
    let bracket = &da[0] * &db[3] - &da[3] * &db[0] - &da[1] * &db[2] + &da[2] * &db[1];
    let left = &da[0] * &db[1] - &da[1] * &db[0];
    let right = &da[2] * &db[3] - &da[3] * &db[2];
    bracket.pow(2) - (&left * &right).scale(4)
}

/// The transcribed `F`, `G`, `H`.
pub fn printed_fgh() -> (Poly16, Poly16, Poly16) {
    let parse = |s: &str| s.parse::<Poly16>().expect("static polynomial text");
    (parse(F_TEXT), parse(G_TEXT), parse(H_TEXT))
}

/// `m²n²(F·G + H²)`.
pub fn printed_rhs() -> Poly16 {
    let (f, g, h) = printed_fgh();
    let mn = &v('m') * &v('n');
    &mn.pow(2) * &(&f * &g + h.pow(2))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpotEvaluation {
    pub params: LwParams,
    #[serde(with = "serde_rational")]
    pub lhs: Rational,
    #[serde(with = "serde_rational")]
    pub rhs: Rational,
    /// Discriminant of the numerically composed matrix.
    #[serde(with = "serde_rational")]
    pub lhs_from_minors: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolySummary {
    pub terms: usize,
    pub sha256: String,
}

impl PolySummary {
    fn of(p: &Poly16) -> Self {
        PolySummary {
            terms: p.term_count(),
            sha256: p.content_hash(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrintedFactors {
    #[serde(rename = "F")]
    pub f: Poly16,
    #[serde(rename = "G")]
    pub g: Poly16,
    #[serde(rename = "H")]
    pub h: Poly16,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCertificate {
    pub chart: LowerChart,
    pub equal: bool,
    pub lhs_summary: PolySummary,
    pub rhs_summary: PolySummary,
    pub difference_summary: PolySummary,
    pub printed: PrintedFactors,
    pub lhs: Poly16,
    pub rhs: Poly16,
    pub difference: Poly16,
    pub spot_evaluations: Vec<SpotEvaluation>,
}

fn spot(params: LwParams, lhs: &Poly16, rhs: &Poly16, chart: LowerChart) -> SpotEvaluation {
    let x: MatQ = lw_compose_with(&params, chart);
    SpotEvaluation {
        lhs: lhs.eval(params.values()),
        rhs: rhs.eval(params.values()),
        lhs_from_minors: discriminant_from_minors(&x).expect("4x4 matrix"),
        params,
    }
}

/// Expands both sides and compares them; the first spot row is always the
/// all-ones point, followed by `spot_count` random positive points.
pub fn verify_identity(spot_count: usize, seed: u64, chart: LowerChart) -> IdentityCertificate {
    let (lhs, rhs) = rayon::join(|| symbolic_d(chart), printed_rhs);
    let difference = &lhs - &rhs;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut spots = vec![spot(LwParams::all_ones(), &lhs, &rhs, chart)];
    for _ in 0..spot_count {
        spots.push(spot(random_params(&mut rng, 10), &lhs, &rhs, chart));
    }
    let (f, g, h) = printed_fgh();
    IdentityCertificate {
        chart,
        equal: difference.is_zero(),
        lhs_summary: PolySummary::of(&lhs),
        rhs_summary: PolySummary::of(&rhs),
        difference_summary: PolySummary::of(&difference),
        printed: PrintedFactors { f, g, h },
        lhs,
        rhs,
        difference,
        spot_evaluations: spots,
    }
}

/// Exponent vector from a product of letters, e.g. `"bknp"`.
pub fn monomial_of(word: &str) -> Monomial {
    let mut e = [0u8; NVARS];
    for c in word.chars() {
        e[crate::poly::var_index(c).expect("variable letter")] += 1;
    }
    Monomial(e)
}
