//! Cross-verification of bounds, multiplicity engines and the lower-bound
//! oracle over a parameter sweep and seeded random corpora.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use super::corpus;
use super::search::{count_heavy_points, lower_bound_search};
use crate::bounds::{
    closed_form_bound_unchecked, condition_a, condition_a_r2_equal_sizes, condition_a_sufficient,
    condition_a_without_top_a2, d_recursive_uncached, footprint_bound, necessary_bound_check, sz_mult_bound,
    sz_sum_bound, two_var_bound, two_var_small_bound, BoundParams, DEvaluator, TwoVarCase,
};
use crate::ffpoly::{
    grid_count_mult_at_least, grid_multiplicity_sum, FactorSpec, Grid, PrimeField, SparsePolynomial,
};
use crate::rational::{floor, from_biguint};

/// Bounds of the exhaustive sweep plus sizes of the random corpora.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepSpec {
    /// Number of variables runs over `1..=max_vars`.
    pub max_vars: usize,
    /// For `m <= 2` every size vector in `[1, max_size]^m`; for `m >= 3`
    /// only equal sizes.
    pub max_size: u64,
    pub max_multiplicity: u32,
    /// Random polynomial instances per randomized check.
    pub samples: usize,
    pub seed: u64,
}

impl SweepSpec {
    /// An empty sweep: no tuples, no samples.
    pub fn none() -> Self {
        Self { max_vars: 0, max_size: 0, max_multiplicity: 0, samples: 0, seed: 0 }
    }

    pub fn is_empty(&self) -> bool {
        self.max_vars == 0 && self.samples == 0
    }

    fn configs(&self) -> Vec<(u32, Vec<u64>)> {
        let mut out = Vec::new();
        for m in 1..=self.max_vars {
            let size_vectors: Vec<Vec<u64>> = match m {
                1 => (1..=self.max_size).map(|s| vec![s]).collect(),
                2 => (1..=self.max_size)
                    .flat_map(|a| (1..=self.max_size).map(move |b| vec![a, b]))
                    .collect(),
                _ => (1..=self.max_size).map(|s| vec![s; m]).collect(),
            };
            for r in 1..=self.max_multiplicity {
                for s in &size_vectors {
                    out.push((r, s.clone()));
                }
            }
        }
        out
    }
}

impl Default for SweepSpec {
    /// Desk scale: `m <= 3`, `s_t <= 6`, `r <= 4`.
    fn default() -> Self {
        Self { max_vars: 3, max_size: 6, max_multiplicity: 4, samples: 500, seed: 2024 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub cases: u64,
    pub failures: u64,
    /// Parameters of the first failing case.
    pub counterexample: Option<String>,
}

impl CheckResult {
    fn new(name: &'static str) -> Self {
        Self { name, cases: 0, failures: 0, counterexample: None }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(describe());
            }
        }
    }

    fn merge(&mut self, other: &CheckResult) {
        self.cases += other.cases;
        self.failures += other.failures;
        if self.counterexample.is_none() {
            self.counterexample.clone_from(&other.counterexample);
        }
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "pass" } else { "fail" };
        write!(f, "check={} status={} cases={} failures={}", self.name, status, self.cases, self.failures)?;
        if let Some(c) = &self.counterexample {
            write!(f, " witness=\"{c}\"")?;
        }
        Ok(())
    }
}

/// Outcome of a verification run, one entry per named check.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn entry(&mut self, name: &'static str) -> &mut CheckResult {
        if let Some(pos) = self.checks.iter().position(|c| c.name == name) {
            return &mut self.checks[pos];
        }
        self.checks.push(CheckResult::new(name));
        self.checks.last_mut().unwrap()
    }

    fn record(&mut self, name: &'static str, ok: bool, describe: impl FnOnce() -> String) {
        self.entry(name).record(ok, describe);
    }

    fn absorb(&mut self, other: Report) {
        for c in &other.checks {
            self.entry(c.name).merge(c);
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let failed = self.checks.iter().filter(|c| !c.passed()).count();
        let status = if self.passed() { "pass" } else { "fail" };
        writeln!(f, "summary status={status} checks={} failed={failed}", self.checks.len())
    }
}

/// Runs every check over `spec`. Failures are reported, never raised.
pub fn verify_all(spec: &SweepSpec) -> Report {
    let mut report = Report::default();
    if spec.is_empty() {
        return report;
    }
    let per_config: Vec<Report> = spec.configs().par_iter().map(|(r, s)| sweep_config(*r, s)).collect();
    for part in per_config {
        report.absorb(part);
    }
    report.absorb(memo_agreement(spec));
    if spec.samples > 0 {
        report.absorb(multiplicity_checks(spec));
        report.absorb(product_checks(spec));
        report.absorb(corpus_bound_checks(spec));
        report.absorb(oracle_checks(spec));
    }
    report
}

fn exponent_vectors(r: u32, sizes: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for &s in sizes {
        let top = u64::from(r) * s;
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=top).map(move |i| {
                    let mut v = prefix.clone();
                    v.push(i);
                    v
                })
            })
            .collect();
    }
    out
}

/// Every exponent vector with `i_t <= r s_t` for one `(r, sizes)`.
fn sweep_config(r: u32, sizes: &[u64]) -> Report {
    let mut rep = Report::default();
    let mut ev = DEvaluator::new();
    let m = sizes.len();
    let grid = BoundParams::new(vec![0; m], r, sizes.to_vec()).expect("sweep sizes are positive").grid_size();
    let grid_q = from_biguint(&grid);
    for exps in exponent_vectors(r, sizes) {
        let params = BoundParams::new(exps.clone(), r, sizes.to_vec()).expect("sweep sizes are positive");
        let show = || params.to_string();
        let d = ev.d(&params);
        let d_q = from_biguint(&d);
        let sz_mult = sz_mult_bound(&params);

        rep.record("d-le-sz-mult", d_q <= sz_mult && d <= grid, show);

        for t in 0..m {
            if exps[t] > 0 {
                let mut lower = exps.clone();
                lower[t] -= 1;
                let below = ev.eval(&lower, r, sizes);
                rep.record("d-monotone-exponent", below <= d, || format!("{params} t={}", t + 1));
            }
            let mut bigger = sizes.to_vec();
            bigger[t] += 1;
            let wider = ev.eval(&exps, r, &bigger);
            rep.record("d-monotone-size", d <= wider, || format!("{params} t={}", t + 1));
        }

        if r == 1 {
            if let Ok(fp) = footprint_bound(&params) {
                rep.record("d-r1-equals-footprint", d == fp, show);
                rep.record(
                    "closed-form-r1-equals-footprint",
                    closed_form_bound_unchecked(&params) == from_biguint(&fp),
                    show,
                );
            }
        }

        if m >= 2 {
            let a = condition_a(&params).expect("m >= 2");
            if a.holds() {
                let closed = closed_form_bound_unchecked(&params);
                let cap = if sz_mult < grid_q { sz_mult.clone() } else { grid_q.clone() };
                rep.record("closed-form-dominates-d", d_q <= closed && closed <= cap, show);
                for t in 0..m {
                    if exps[t] > 0 {
                        let mut lower = exps.clone();
                        lower[t] -= 1;
                        let ok = condition_a(&params.with_exponents(lower).expect("same arity"))
                            .expect("m >= 2")
                            .holds();
                        rep.record("condition-a-monotone", ok, || format!("{params} t={}", t + 1));
                    }
                }
                if r >= 2 {
                    rep.record("condition-a-implies-necessary", necessary_bound_check(&params).unwrap(), show);
                }
            }
            if m >= 3 {
                if condition_a_sufficient(&params).expect("m >= 3") {
                    rep.record("sufficient-implies-condition-a", a.holds(), show);
                }
                let trimmed = condition_a_without_top_a2(&params).expect("m >= 3");
                rep.record("condition-a-top-a2-redundant", trimmed.holds() == a.holds(), show);
            }
            if r == 2 && sizes.iter().all(|&s| s == sizes[0]) {
                rep.record(
                    "condition-a-r2-equal-sizes",
                    condition_a_r2_equal_sizes(&exps, sizes[0]) == a.holds(),
                    show,
                );
            }
        }

        if m == 2 {
            if let Ok(b) = two_var_bound(exps[0], exps[1], r, sizes[0], sizes[1]) {
                let ok = match b.case {
                    TwoVarCase::C4 => b.value == d_q,
                    _ => d_q <= b.value,
                };
                rep.record("two-var-cases", ok, || format!("{params} case={}", b.case));
            }
            if let Ok(v) = two_var_small_bound(exps[0], exps[1], r, sizes[0], sizes[1]) {
                rep.record("two-var-small-dominates-d", d_q <= v, show);
            }
        }
    }
    rep
}

/// Memoized and plain recursion agree on random sweep tuples.
fn memo_agreement(spec: &SweepSpec) -> Report {
    let mut rep = Report::default();
    let mut rng = corpus::rng(spec.seed);
    let configs = spec.configs();
    if configs.is_empty() {
        return rep;
    }
    let mut ev = DEvaluator::new();
    for _ in 0..100 {
        let (r, sizes) = configs.choose(&mut rng).unwrap();
        // keep the uncached recursion affordable
        let sizes: Vec<u64> = sizes.iter().map(|&s| s.min(4)).collect();
        let exps: Vec<u64> = sizes.iter().map(|&s| rng.gen_range(0..=u64::from(*r) * s)).collect();
        let params = BoundParams::new(exps, *r, sizes).expect("positive sizes");
        let ok = ev.d(&params) == d_recursive_uncached(&params);
        rep.record("d-memo-vs-uncached", ok, || params.to_string());
    }
    rep
}

fn fields() -> [PrimeField; 2] {
    [PrimeField::new(5).unwrap(), PrimeField::new(7).unwrap()]
}

/// Translation against Hasse derivatives, planted zeros and Hasse linearity.
fn multiplicity_checks(spec: &SweepSpec) -> Report {
    let mut rep = Report::default();
    let mut rng = corpus::rng(spec.seed ^ 0x5eed_0001);
    for n in 0..spec.samples {
        let field = fields()[n % 2];
        let nvars = rng.gen_range(1..=3);
        let (f, point, order) = corpus::polynomial_with_zero(&mut rng, field, nvars, 6);
        let show = || format!("{} at {:?}", f.to_text(), point.iter().map(|a| a.value()).collect::<Vec<_>>());
        let by_translation = f.multiplicity(&point).unwrap();
        rep.record("multiplicity-hasse-vs-translation", by_translation == f.multiplicity_by_hasse(&point).unwrap(), show);
        if !f.is_zero() {
            rep.record("multiplicity-planted-order", by_translation.finite() == Some(u64::from(order)), show);
        }

        let g = corpus::random_polynomial(&mut rng, field, nvars, 8, 6);
        let c = field.element(rng.gen_range(0..field.modulus()));
        let k: Vec<u32> = (0..nvars).map(|_| rng.gen_range(0..=3)).collect();
        let lhs = f.add(&g.scale(c)).unwrap().hasse_derivative(&k).unwrap();
        let rhs = f
            .hasse_derivative(&k)
            .unwrap()
            .add(&g.hasse_derivative(&k).unwrap().scale(c))
            .unwrap();
        let zero_order = f.hasse_derivative(&vec![0; nvars]).unwrap() == f;
        rep.record("hasse-linearity", lhs == rhs && zero_order, || format!("{} k={k:?}", f.to_text()));
    }
    rep
}

fn product_profile_text(spec: &FactorSpec) -> String {
    let parts: Vec<String> = spec
        .factors()
        .iter()
        .map(|list| {
            let inner: Vec<String> = list.iter().map(|(a, r)| format!("{}^{}", a.value(), r)).collect();
            format!("[{}]", inner.join(" "))
        })
        .collect();
    format!("GF({}) roots {}", spec.field().modulus(), parts.join(" "))
}

/// Products of linear factors: multiplicity formula and sharpness of the
/// generalized Schwartz-Zippel sum.
fn product_checks(spec: &SweepSpec) -> Report {
    let field = PrimeField::new(7).unwrap();
    let mut rng = corpus::rng(spec.seed ^ 0x5eed_0002);
    let count = (spec.samples / 5).max(1);
    let instances: Vec<(FactorSpec, Grid)> = (0..count)
        .map(|n| {
            let m = 2 + n % 2;
            let grid = Grid::initial_segments(field, &vec![5; m]).unwrap();
            (corpus::random_factor_spec(&mut rng, &grid, field, 6), grid)
        })
        .collect();
    let parts: Vec<Report> = instances
        .par_iter()
        .map(|(fs, grid)| {
            let mut rep = Report::default();
            let poly = fs.build_product();
            let mut ok = true;
            for point in grid.points() {
                let expected = fs.product_multiplicity_at(&point).unwrap();
                ok &= poly.multiplicity(&point).unwrap().finite() == Some(expected);
            }
            rep.record("product-multiplicity-formula", ok, || product_profile_text(fs));
            let lead = fs.leading_exponent();
            let params = BoundParams::new(lead, 1, grid.sizes()).unwrap();
            let sum = grid_multiplicity_sum(&poly, grid).unwrap();
            rep.record("product-sum-attains-sz-sum", BigUint::from(sum) == sz_sum_bound(&params), || {
                product_profile_text(fs)
            });
            rep
        })
        .collect();
    let mut rep = Report::default();
    parts.into_iter().for_each(|p| rep.absorb(p));
    rep
}

/// Actual zero counts of random polynomials never exceed D or the
/// generalized Schwartz-Zippel sum.
fn corpus_bound_checks(spec: &SweepSpec) -> Report {
    let field = PrimeField::new(7).unwrap();
    let mut rng = corpus::rng(spec.seed ^ 0x5eed_0003);
    let instances: Vec<(SparsePolynomial, Grid, u32)> = (0..spec.samples / 2)
        .map(|n| {
            let m = rng.gen_range(2..=3);
            let sizes: Vec<u64> = (0..m).map(|_| rng.gen_range(2..=5)).collect();
            let grid = Grid::initial_segments(field, &sizes).unwrap();
            let r = rng.gen_range(1..=4);
            let poly = if n % 2 == 0 {
                corpus::random_factor_spec(&mut rng, &grid, field, 8).build_product()
            } else {
                corpus::random_polynomial(&mut rng, field, m, 10, 6)
            };
            (poly, grid, r)
        })
        .collect();
    let parts: Vec<Report> = instances
        .par_iter()
        .filter(|(poly, _, _)| !poly.is_zero())
        .map(|(poly, grid, r)| {
            let mut rep = Report::default();
            let lead: Vec<u64> = poly.leading_monomial().unwrap().iter().map(|&e| u64::from(e)).collect();
            let params = BoundParams::new(lead, *r, grid.sizes()).unwrap();
            let heavy = grid_count_mult_at_least(poly, grid, u64::from(*r)).unwrap();
            let d = DEvaluator::new().d(&params);
            let cap = floor(&sz_mult_bound(&params)).min(BigInt::from(params.grid_size()));
            let ok = BigUint::from(heavy) <= d && BigInt::from(d) <= cap;
            rep.record("heavy-zeros-le-d", ok, || format!("{} {params}", poly.to_text()));
            let sum = grid_multiplicity_sum(poly, grid).unwrap();
            rep.record("multiplicity-sum-le-sz-sum", BigUint::from(sum) <= sz_sum_bound(&params), || {
                format!("{} {params}", poly.to_text())
            });
            rep
        })
        .collect();
    let mut rep = Report::default();
    parts.into_iter().for_each(|p| rep.absorb(p));
    rep
}

/// Lower-bound search against D, permutation invariance and realization of
/// witnesses as actual polynomials.
fn oracle_checks(spec: &SweepSpec) -> Report {
    let mut rep = Report::default();
    let mut rng = corpus::rng(spec.seed ^ 0x5eed_0004);

    let mut configs: Vec<(u32, Vec<u64>)> = Vec::new();
    for r in 1..=spec.max_multiplicity.min(3) {
        for s in 1..=spec.max_size.min(5) {
            configs.push((r, vec![s, s]));
        }
        for s in 1..=spec.max_size.min(3) {
            if spec.max_vars >= 3 {
                configs.push((r, vec![s; 3]));
            }
        }
    }
    let parts: Vec<Report> = configs
        .par_iter()
        .map(|(r, sizes)| {
            let mut rep = Report::default();
            let mut ev = DEvaluator::new();
            for exps in exponent_vectors(*r, sizes) {
                let params = BoundParams::new(exps.clone(), *r, sizes.clone()).unwrap();
                let (lower, _) = lower_bound_search(&exps, u64::from(*r), sizes);
                rep.record("lower-bound-le-d", BigUint::from(lower) <= ev.d(&params), || params.to_string());
            }
            rep
        })
        .collect();
    parts.into_iter().for_each(|p| rep.absorb(p));

    for _ in 0..spec.samples {
        let m = rng.gen_range(1..=3);
        let r = rng.gen_range(0..=5);
        let mut profiles: Vec<Vec<u64>> = (0..m)
            .map(|_| {
                let len = rng.gen_range(1..=5);
                corpus::random_profile(&mut rng, len, 8)
            })
            .collect();
        let before = count_heavy_points(&profiles, r);
        let original = profiles.clone();
        for p in &mut profiles {
            p.shuffle(&mut rng);
        }
        rep.record("heavy-count-permutation-invariant", count_heavy_points(&profiles, r) == before, || {
            format!("profiles={original:?} r={r}")
        });
    }

    let field = PrimeField::new(7).unwrap();
    let sizes = [5u64, 5];
    let grid = Grid::initial_segments(field, &sizes).unwrap();
    let cells = (spec.samples / 10).max(1);
    let realized: Vec<Report> = (0..cells)
        .map(|_| (rng.gen_range(0..=14u64), rng.gen_range(0..=14u64)))
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&(i1, i2)| {
            let mut rep = Report::default();
            let (count, witness) = lower_bound_search(&[i1, i2], 3, &sizes);
            let profiles: Vec<Vec<u32>> = witness
                .profiles
                .iter()
                .map(|p| p.iter().map(|&v| u32::try_from(v).unwrap()).collect())
                .collect();
            let fs = FactorSpec::from_profiles(field, grid.sets(), &profiles).unwrap();
            let poly = fs.build_product();
            let actual = grid_count_mult_at_least(&poly, &grid, 3).unwrap();
            let lead_ok = poly.leading_monomial() == Some(&[i1 as u32, i2 as u32][..]);
            rep.record("witness-realizes-count", actual == count && lead_ok, || {
                format!("i=({i1},{i2}) r=3 s=(5,5) witness={witness}")
            });
            rep
        })
        .collect();
    realized.into_iter().for_each(|p| rep.absorb(p));
    rep
}

/// Name of the deliberately failing check selected by `--expect-fail`.
pub const CLOSED_FORM_OUTSIDE_REGION: &str = "closed-form-outside-region";

/// Asserts the closed form as an upper bound on D for `r = 3`, `s = (5, 5)`
/// over all unsaturated cells. The assertion is known to fail, and only
/// outside the small-exponent region; the result passes iff such
/// violations exist and all of them lie outside that region. The witness
/// lists the violating cells.
pub fn expect_closed_form_failure() -> CheckResult {
    let (r, sizes) = (3u32, [5u64, 5]);
    let mut ev = DEvaluator::new();
    let mut violations = Vec::new();
    let mut inside_region = Vec::new();
    let mut cases = 0;
    for i2 in 0..=14u64 {
        for i1 in 0..=14u64 {
            if i1 / sizes[0] + i2 / sizes[1] >= u64::from(r) {
                continue;
            }
            cases += 1;
            let params = BoundParams::new(vec![i1, i2], r, sizes.to_vec()).unwrap();
            let closed = floor(&closed_form_bound_unchecked(&params));
            let d = BigInt::from(ev.d(&params));
            if closed < d {
                violations.push(format!("({i1},{i2})"));
                if two_var_small_bound(i1, i2, r, sizes[0], sizes[1]).is_ok() {
                    inside_region.push(format!("({i1},{i2})"));
                }
            }
        }
    }
    let mut result = CheckResult::new(CLOSED_FORM_OUTSIDE_REGION);
    result.cases = cases;
    if violations.is_empty() {
        result.failures = 1;
        result.counterexample = Some("no violation found".into());
    } else if !inside_region.is_empty() {
        result.failures = inside_region.len() as u64;
        result.counterexample = Some(format!("violations inside region: {}", inside_region.join(" ")));
    } else {
        result.counterexample = Some(format!("{} expected violations: {}", violations.len(), violations.join(" ")));
    }
    result
}
