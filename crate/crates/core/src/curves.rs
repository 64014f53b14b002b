//! Curves in RP^3 given by polynomial lifts on `[0, 1]`, their tangent
//! lines, the ε-sampling that certifies total positivity of four tangent
//! lines, and the Schubert count of the Grassmannian.

use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{combinations, serde_rational, serde_rational_vec, IndexSet, MatQ, Rational};
use crate::error::{Error, Result};
use crate::totalpos::{check_tp_config, ConfigBlocks};

pub const MAX_HALVINGS: u32 = 64;

/// Coefficients in ascending powers of `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct UniPoly(#[serde(with = "serde_rational_vec")] pub Vec<Rational>);

impl UniPoly {
    pub fn derivative(&self) -> UniPoly {
        UniPoly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(k.into()))
                .collect(),
        )
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.0
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CurveSpec {
    /// `t -> (1, t, t², t³)`.
    RationalNormal,
    Polynomial {
        components: Vec<UniPoly>,
    },
}

impl CurveSpec {
    pub fn moment() -> Self {
        CurveSpec::RationalNormal
    }

    fn components(&self) -> Result<Vec<UniPoly>> {
        match self {
            CurveSpec::RationalNormal => Ok((0..4)
                .map(|k| {
                    let mut c = vec![Rational::zero(); k + 1];
                    c[k] = Rational::one();
                    UniPoly(c)
                })
                .collect()),
            CurveSpec::Polynomial { components } => {
                if components.len() != 4 {
                    return Err(Error::Input(format!(
                        "a curve in RP^3 needs 4 components, got {}",
                        components.len()
                    )));
                }
                Ok(components.clone())
            }
        }
    }
}

fn check_domain(t: &Rational) -> Result<()> {
    if t.is_negative() || *t > Rational::one() {
        return Err(Error::Domain(format!("t = {t} is outside [0, 1]")));
    }
    Ok(())
}

/// The `order`-th derivative of the lift at `t`.
pub fn curve_eval(c: &CurveSpec, t: &Rational, order: u32) -> Result<[Rational; 4]> {
    check_domain(t)?;
    if order > 3 {
        return Err(Error::Domain(format!("derivative order {order} > 3")));
    }
    let comps = c.components()?;
    Ok(std::array::from_fn(|k| {
        let mut p = comps[k].clone();
        for _ in 0..order {
            p = p.derivative();
        }
        p.eval(t)
    }))
}

fn column_matrix(cols: &[[Rational; 4]]) -> MatQ {
    MatQ::from_fn(4, cols.len(), |i, j| cols[j][i].clone())
}

/// Inverse of the Wronski matrix at 0; in these coordinates
/// `γ^{(j-1)}(0) = e_j`.
pub fn frenet_basis(c: &CurveSpec) -> Result<MatQ> {
    let zero = Rational::zero();
    let cols: Vec<[Rational; 4]> = (0..4)
        .map(|k| curve_eval(c, &zero, k))
        .collect::<Result<_>>()?;
    column_matrix(&cols)
        .inverse()
        .map_err(|_| Error::NotConvexAtZero)
}

fn apply(m: &MatQ, v: &[Rational; 4]) -> [Rational; 4] {
    std::array::from_fn(|i| (0..4).fold(Rational::zero(), |acc, k| acc + m.get(i, k) * &v[k]))
}

/// Columns `γ(t)` and `γ'(t)` in Frenet coordinates.
pub fn tangent_block(c: &CurveSpec, t: &Rational) -> Result<MatQ> {
    let frame = frenet_basis(c)?;
    let block = column_matrix(&[
        apply(&frame, &curve_eval(c, t, 0)?),
        apply(&frame, &curve_eval(c, t, 1)?),
    ]);
    if block.rank() < 2 {
        return Err(Error::Cusp(t.clone()));
    }
    Ok(block)
}

/// Number of sample pairs `{2k-1, 2k}` contained in `rows`.
pub fn kappa(rows: &IndexSet) -> u32 {
    (1..=4)
        .filter(|k| rows.contains(2 * k - 1) && rows.contains(2 * k))
        .count() as u32
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampledMinor {
    pub rows: IndexSet,
    pub kappa: u32,
    #[serde(with = "serde_rational")]
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleReport {
    #[serde(with = "serde_rational_vec")]
    pub ts: Vec<Rational>,
    #[serde(with = "serde_rational")]
    pub epsilon: Rational,
    #[serde(rename = "W")]
    pub w: MatQ,
    pub minors: Vec<SampledMinor>,
    pub ok: bool,
}

fn validate_ts(ts: &[Rational; 4]) -> Result<()> {
    if !ts[0].is_positive() || ts[3] >= Rational::one() {
        return Err(Error::Input("sample parameters must lie in (0, 1)".into()));
    }
    if ts.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Input(
            "sample parameters must be strictly increasing".into(),
        ));
    }
    Ok(())
}

/// Gaps `t3 - t1`, `t5 - t3`, `t7 - t5`, `1 - t7`.
fn min_gap(ts: &[Rational; 4]) -> Rational {
    let mut gaps: Vec<Rational> = ts.windows(2).map(|w| &w[1] - &w[0]).collect();
    gaps.push(Rational::one() - &ts[3]);
    gaps.into_iter().min().expect("four gaps")
}

/// Rows `w_{2k-1} = γ(t_k)`, `w_{2k} = γ(t_k) + ε·γ'(t_k)` in Frenet
/// coordinates, with all 70 maximal minors.
pub fn lemma_sample(c: &CurveSpec, ts: &[Rational; 4], epsilon: &Rational) -> Result<SampleReport> {
    validate_ts(ts)?;
    if !epsilon.is_positive() {
        return Err(Error::Input("epsilon must be positive".into()));
    }
    if *epsilon >= min_gap(ts) {
        return Err(Error::Input(format!(
            "epsilon {epsilon} breaks the ordering of the sample points"
        )));
    }
    let frame = frenet_basis(c)?;
    let mut rows = Vec::with_capacity(8);
    for t in ts {
        let p = apply(&frame, &curve_eval(c, t, 0)?);
        let dp = apply(&frame, &curve_eval(c, t, 1)?);
        let q: [Rational; 4] = std::array::from_fn(|i| &p[i] + epsilon * &dp[i]);
        rows.push(p.to_vec());
        rows.push(q.to_vec());
    }
    let w = MatQ::from_rows(rows)?;
    let all = IndexSet::new(vec![1, 2, 3, 4])?;
    let minors: Vec<SampledMinor> = combinations(8, 4)
        .into_par_iter()
        .map(|rows| {
            let value = w.minor(&rows, &all).expect("in range");
            SampledMinor {
                kappa: kappa(&rows),
                rows,
                value,
            }
        })
        .collect();
    let ok = minors.iter().all(|m| m.value.is_positive());
    Ok(SampleReport {
        ts: ts.to_vec(),
        epsilon: epsilon.clone(),
        w,
        minors,
        ok,
    })
}

/// First `ε = gap/2^j`, `j ≥ 2`, at which every sampled minor is positive.
pub fn epsilon_threshold(c: &CurveSpec, ts: &[Rational; 4]) -> Result<Rational> {
    validate_ts(ts)?;
    let two = Rational::from_integer(2.into());
    let mut eps = min_gap(ts) / Rational::from_integer(4.into());
    for _ in 0..MAX_HALVINGS {
        if lemma_sample(c, ts, &eps)?.ok {
            return Ok(eps);
        }
        eps /= &two;
    }
    Err(Error::SearchFailure(MAX_HALVINGS))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalingRatio {
    pub rows: IndexSet,
    pub kappa: u32,
    #[serde(with = "serde_rational")]
    pub ratio: Rational,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalingReport {
    #[serde(with = "serde_rational")]
    pub epsilon: Rational,
    pub ratios: Vec<ScalingRatio>,
    pub ok: bool,
}

/// `W_I(ε/2) / W_I(ε)` must lie within a factor 2 of `2^{-κ_I}`.
pub fn scaling_check(
    c: &CurveSpec,
    ts: &[Rational; 4],
    epsilon: &Rational,
) -> Result<ScalingReport> {
    let half = epsilon / Rational::from_integer(2.into());
    let coarse = lemma_sample(c, ts, epsilon)?;
    let fine = lemma_sample(c, ts, &half)?;
    let ratios: Vec<ScalingRatio> = coarse
        .minors
        .iter()
        .zip(&fine.minors)
        .map(|(a, b)| {
            let target = Rational::new(One::one(), num_bigint::BigInt::one() << a.kappa);
            let (ratio, ok) = if a.value.is_zero() {
                (Rational::zero(), false)
            } else {
                let r = &b.value / &a.value;
                let lo = &target / Rational::from_integer(2.into());
                let hi = &target * Rational::from_integer(2.into());
                let ok = r >= lo && r <= hi;
                (r, ok)
            };
            ScalingRatio {
                rows: a.rows.clone(),
                kappa: a.kappa,
                ratio,
                ok,
            }
        })
        .collect();
    let ok = ratios.iter().all(|r| r.ok);
    Ok(ScalingReport {
        epsilon: epsilon.clone(),
        ratios,
        ok,
    })
}

/// Four tangent lines as blocks in the sampled basis `(w_{2k-1}, w_{2k})`,
/// with the certifying ε. Each block spans the tangent plane at `t_k`.
pub fn tangent_config_with_epsilon(
    c: &CurveSpec,
    ts: &[Rational; 4],
) -> Result<(ConfigBlocks, Rational)> {
    let eps = epsilon_threshold(c, ts)?;
    let report = lemma_sample(c, ts, &eps)?;
    let blocks = ConfigBlocks::new(std::array::from_fn(|k| {
        report
            .w
            .select(&[2 * k, 2 * k + 1], &[0, 1, 2, 3])
            .transpose()
    }))?;
    check_tp_config(&blocks)?.into_result()?;
    Ok((blocks, eps))
}

pub fn tangent_config(c: &CurveSpec, ts: &[Rational; 4]) -> Result<ConfigBlocks> {
    tangent_config_with_epsilon(c, ts).map(|(b, _)| b)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvexityFailure {
    #[serde(with = "serde_rational_vec")]
    pub ts: Vec<Rational>,
    #[serde(with = "serde_rational")]
    pub det: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvexityReport {
    pub grid_size: usize,
    pub checked: usize,
    pub failures: usize,
    pub first_failure: Option<ConvexityFailure>,
    /// `"sampled-consistent"` or `"sampled-inconsistent"`; a necessary
    /// condition only.
    pub status: String,
    pub reason: Option<String>,
}

pub const SAMPLED_CONSISTENT: &str = "sampled-consistent";
pub const SAMPLED_INCONSISTENT: &str = "sampled-inconsistent";

/// Checks `det[γ(t_a) γ(t_b) γ(t_c) γ(t_d)] > 0` in Frenet coordinates for
/// every 4-subset of the grid `i/(grid_size - 1)`.
pub fn convexity_sample_check(c: &CurveSpec, grid_size: usize) -> Result<ConvexityReport> {
    if grid_size < 4 {
        return Err(Error::Input("grid size must be at least 4".into()));
    }
    let inconsistent = |reason: String| ConvexityReport {
        grid_size,
        checked: 0,
        failures: 1,
        first_failure: None,
        status: SAMPLED_INCONSISTENT.into(),
        reason: Some(reason),
    };
    let frame = match frenet_basis(c) {
        Ok(f) => f,
        Err(e) => return Ok(inconsistent(e.to_string())),
    };
    let grid: Vec<Rational> = (0..grid_size)
        .map(|i| Rational::new(i.into(), (grid_size - 1).into()))
        .collect();
    let mut points = Vec::with_capacity(grid_size);
    for t in &grid {
        let p = apply(&frame, &curve_eval(c, t, 0)?);
        if p.iter().all(Zero::is_zero) {
            return Ok(inconsistent(format!("lift vanishes at t = {t}")));
        }
        points.push(p);
    }
    let subsets = combinations(grid_size, 4);
    let dets: Vec<(IndexSet, Rational)> = subsets
        .into_par_iter()
        .map(|s| {
            let cols: Vec<[Rational; 4]> = s.zero_based().map(|i| points[i].clone()).collect();
            let d = column_matrix(&cols).det().expect("square");
            (s, d)
        })
        .collect();
    let bad: Vec<&(IndexSet, Rational)> = dets.iter().filter(|(_, d)| !d.is_positive()).collect();
    Ok(ConvexityReport {
        grid_size,
        checked: dets.len(),
        failures: bad.len(),
        first_failure: bad.first().map(|(s, d)| ConvexityFailure {
            ts: s.zero_based().map(|i| grid[i].clone()).collect(),
            det: d.clone(),
        }),
        status: if bad.is_empty() {
            SAMPLED_CONSISTENT
        } else {
            SAMPLED_INCONSISTENT
        }
        .into(),
        reason: None,
    })
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Degree of the Grassmannian of projective `k`-planes in `P^n`:
/// `1!…(n−k−1)! · ((k+1)(n−k))! / ((k+1)!…n!)`.
pub fn schubert_count(k: u64, n: u64) -> Result<BigUint> {
    if k >= n {
        return Err(Error::Domain(format!(
            "need 0 <= k < n, got k = {k}, n = {n}"
        )));
    }
    let num = (1..n - k).fold(factorial((k + 1) * (n - k)), |acc, i| acc * factorial(i));
    let den = (k + 1..=n).fold(BigUint::one(), |acc, i| acc * factorial(i));
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, qi};

    fn tenths() -> [Rational; 4] {
        [q(1, 10), q(3, 10), q(5, 10), q(7, 10)]
    }

    fn poly(cs: &[&[i64]]) -> CurveSpec {
        CurveSpec::Polynomial {
            components: cs
                .iter()
                .map(|c| UniPoly(c.iter().map(|&x| qi(x)).collect()))
                .collect(),
        }
    }

    fn moment_as_poly() -> CurveSpec {
        poly(&[&[1], &[0, 1], &[0, 0, 1], &[0, 0, 0, 1]])
    }

    #[test]
    fn evaluation() {
        let m = CurveSpec::moment();
        let z = qi(0);
        let expect = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 2, 0], [0, 0, 0, 6]];
        for (k, e) in expect.iter().enumerate() {
            assert_eq!(curve_eval(&m, &z, k as u32).unwrap(), e.map(qi));
        }
        assert_eq!(curve_eval(&m, &qi(1), 0).unwrap(), [1, 1, 1, 1].map(qi));
        assert_eq!(curve_eval(&m, &qi(1), 1).unwrap(), [0, 1, 2, 3].map(qi));
        assert!(matches!(curve_eval(&m, &q(3, 2), 0), Err(Error::Domain(_))));
        assert!(matches!(curve_eval(&m, &qi(0), 4), Err(Error::Domain(_))));
        let p = moment_as_poly();
        for k in 0..4 {
            assert_eq!(curve_eval(&m, &q(2, 7), k), curve_eval(&p, &q(2, 7), k));
        }
    }

    #[test]
    fn frenet() {
        let f = frenet_basis(&CurveSpec::moment()).unwrap();
        assert_eq!(f, MatQ::diag(&[qi(1), qi(1), q(1, 2), q(1, 6)]));
        let c = poly(&[&[1, 2], &[0, 1, 3], &[1, 0, 1, 1], &[0, 0, 0, 2]]);
        let f = frenet_basis(&c).unwrap();
        let w0: Vec<[Rational; 4]> = (0..4).map(|k| curve_eval(&c, &qi(0), k).unwrap()).collect();
        assert_eq!(f.mul(&column_matrix(&w0)).unwrap(), MatQ::identity(4));
        let flat = poly(&[&[1], &[0, 1], &[0, 0, 1], &[0, 0, 1]]);
        assert_eq!(frenet_basis(&flat), Err(Error::NotConvexAtZero));
    }

    #[test]
    fn tangent_blocks() {
        let m = CurveSpec::moment();
        let b0 = tangent_block(&m, &qi(0)).unwrap();
        assert_eq!(
            b0,
            MatQ::from_i64(&[&[1, 0], &[0, 1], &[0, 0], &[0, 0]]).unwrap()
        );
        let b1 = tangent_block(&m, &qi(1)).unwrap();
        let expect = MatQ::from_rows(vec![
            vec![qi(1), qi(0)],
            vec![qi(1), qi(1)],
            vec![q(1, 2), qi(1)],
            vec![q(1, 6), q(1, 2)],
        ])
        .unwrap();
        assert_eq!(b1, expect);
        // every component has derivative vanishing at t = 1/2
        let cusp = poly(&[&[1], &[0, 1, -1], &[0, 0, 3, -4], &[0, 0, 0, 2, -3]]);
        assert!(frenet_basis(&cusp).is_ok());
        assert_eq!(tangent_block(&cusp, &q(1, 2)), Err(Error::Cusp(q(1, 2))));
    }

    #[test]
    fn kappa_values() {
        let k = |v: Vec<usize>| kappa(&IndexSet::new(v).unwrap());
        assert_eq!(k(vec![1, 2, 3, 4]), 2);
        assert_eq!(k(vec![1, 3, 5, 7]), 0);
        assert_eq!(k(vec![1, 2, 3, 5]), 1);
        assert!(combinations(8, 4).iter().all(|s| kappa(s) <= 2));
    }

    #[test]
    fn sampling_on_moment_curve() {
        let m = CurveSpec::moment();
        let r = lemma_sample(&m, &tenths(), &q(1, 100)).unwrap();
        assert!(r.ok);
        assert_eq!(r.minors.len(), 70);
        assert!(matches!(
            lemma_sample(&m, &tenths(), &qi(1)),
            Err(Error::Input(_))
        ));
        let bad = [q(1, 10), q(1, 10), q(5, 10), q(7, 10)];
        assert!(matches!(
            lemma_sample(&m, &bad, &q(1, 100)),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn epsilon_search() {
        let m = CurveSpec::moment();
        assert_eq!(epsilon_threshold(&m, &tenths()).unwrap(), q(1, 20));
        let clustered = [q(1, 10), q(11, 100), q(12, 100), q(13, 100)];
        let eps = epsilon_threshold(&m, &clustered).unwrap();
        assert_eq!(eps, q(1, 400));
        assert!(lemma_sample(&m, &clustered, &eps).unwrap().ok);
        let s = scaling_check(&m, &tenths(), &q(1, 20)).unwrap();
        assert!(s.ok);
        assert_eq!(s.ratios.len(), 70);
    }

    #[test]
    fn sampled_span_matches_tangent_plane() {
        let m = CurveSpec::moment();
        for eps in [q(1, 20), q(1, 1000)] {
            let r = lemma_sample(&m, &tenths(), &eps).unwrap();
            for (k, t) in tenths().iter().enumerate() {
                let tb = tangent_block(&m, t).unwrap();
                let pair = r.w.select(&[2 * k, 2 * k + 1], &[0, 1, 2, 3]).transpose();
                assert_eq!(tb.hcat(&pair).unwrap().rank(), 2);
            }
        }
    }

    #[test]
    fn exact_tangent_basis_is_not_tp() {
        let m = CurveSpec::moment();
        let blocks: Vec<MatQ> = tenths()
            .iter()
            .map(|t| tangent_block(&m, t).unwrap())
            .collect();
        let cfg = ConfigBlocks::new(blocks.try_into().unwrap()).unwrap();
        assert!(!check_tp_config(&cfg).unwrap().ok);
    }

    #[test]
    fn tangent_configuration() {
        let m = CurveSpec::moment();
        let (cfg, eps) = tangent_config_with_epsilon(&m, &tenths()).unwrap();
        assert_eq!(eps, q(1, 20));
        assert!(check_tp_config(&cfg).unwrap().ok);
        let equal = [q(1, 10), q(3, 10), q(3, 10), q(7, 10)];
        assert!(matches!(tangent_config(&m, &equal), Err(Error::Input(_))));
    }

    #[test]
    fn convexity_checks() {
        let m = CurveSpec::moment();
        let r = convexity_sample_check(&m, 12).unwrap();
        assert_eq!(
            (r.checked, r.failures, r.status.as_str()),
            (495, 0, SAMPLED_CONSISTENT)
        );
        let r = convexity_sample_check(&m, 4).unwrap();
        assert_eq!((r.checked, r.failures), (1, 0));

        let quartic = poly(&[&[1], &[0, 1], &[0, 0, 1], &[0, 0, 0, 0, 1]]);
        let r = convexity_sample_check(&quartic, 12).unwrap();
        assert_eq!(r.status, SAMPLED_INCONSISTENT);

        // generalized Vandermonde: V·(1 − (t1+t2+t3+t4)), negative for large t
        let bent = poly(&[&[1], &[0, 1], &[0, 0, 1], &[0, 0, 0, 1, -1]]);
        let r = convexity_sample_check(&bent, 12).unwrap();
        assert_eq!(r.status, SAMPLED_INCONSISTENT);
        assert!(r.failures > 0);
        assert!(!r.first_failure.unwrap().det.is_positive());
        assert!(convexity_sample_check(&m, 3).is_err());
    }

    fn hook_length_count(k: u64, n: u64) -> BigUint {
        // standard Young tableaux of the (k+1) x (n-k) rectangle
        let (rows, cols) = (k + 1, n - k);
        let mut hooks = BigUint::one();
        for i in 0..rows {
            for j in 0..cols {
                hooks *= (rows - i - 1) + (cols - j - 1) + 1;
            }
        }
        factorial(rows * cols) / hooks
    }

    #[test]
    fn schubert() {
        assert_eq!(schubert_count(1, 3).unwrap(), BigUint::from(2u32));
        assert_eq!(schubert_count(2, 5).unwrap(), BigUint::from(42u32));
        for n in 1..=6 {
            assert_eq!(schubert_count(0, n).unwrap(), BigUint::one());
        }
        for n in 1..=8 {
            for k in 0..n {
                let s = schubert_count(k, n).unwrap();
                assert_eq!(s, hook_length_count(k, n));
                assert_eq!(s, schubert_count(n - k - 1, n).unwrap());
            }
        }
        assert!(matches!(schubert_count(3, 3), Err(Error::Domain(_))));
    }

    #[test]
    fn curve_spec_json() {
        let m: CurveSpec = serde_json::from_str(r#"{"kind":"rational_normal"}"#).unwrap();
        assert_eq!(m, CurveSpec::RationalNormal);
        let p: CurveSpec = serde_json::from_str(
            r#"{"kind":"polynomial","components":[["1"],["0","1"],["0","0","1"],["0","0","0","1"]]}"#,
        )
        .unwrap();
        assert_eq!(p, moment_as_poly());
    }
}
