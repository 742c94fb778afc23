//! The built-in acceptance suite: each criterion recomputes a published or
//! frozen value and compares exactly.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::report::{known_cubic_signature_limit, rational_str};
use crate::error::{Error, Result};
use crate::ff::{Monomial, PolynomialFp};
use crate::oracle::{naive_b_dimension, naive_toric_alpha, OracleConfig};
use crate::splitting::{
    fano_report, fedder_is_fsplit, m_threshold, membership_check, profiles, GradedHypersurface,
    ProfileOptions,
};
use crate::toric::corpus::{named_fan, named_fans, random_fano_fans};
use crate::toric::{toric_alpha, FanData};

/// Seed of the random fan corpus.
pub const FAN_CORPUS_SEED: u64 = 2024;
/// Number of random fans in the corpus.
pub const FAN_CORPUS_SIZE: usize = 12;
/// Frozen `m_2` of the diagonal cubic surface over `F_5`.
pub const CUBIC_M2_P5: u64 = 9;
/// Frozen free ranks `a_1, a_2` of the diagonal cubic surface over `F_5`.
pub const CUBIC_FREE_RANKS_P5: [u64; 2] = [16, 1891];

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl CriterionResult {
    /// `PASS [ 3] name (0.41 s) detail`
    pub fn line(&self) -> String {
        format!(
            "{} [{:>2}] {} ({:.2} s, budget {} s) {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs(),
            self.detail
        )
    }
}

pub const CRITERIA: [(u32, &str, u64); 12] = [
    (1, "cubic surface memberships", 20),
    (2, "quadric thresholds", 30),
    (3, "cubic thresholds", 60),
    (4, "strict bound below 1/2 at p = 5", 60),
    (5, "duality palindrome", 60),
    (6, "monotonicity of alpha_e + p^-e", 60),
    (7, "toric exact values", 3),
    (8, "toric invariants on random fans", 60),
    (9, "quadric vs toric consistency", 30),
    (10, "oracle equivalence", 600),
    (11, "free ranks of the cubic at p = 5", 60),
    (12, "Fedder test on the elliptic cone", 1),
];

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn cubic(p: u64) -> Result<GradedHypersurface> {
    GradedHypersurface::diagonal(p, 4, 3)
}

fn quadric(p: u64, d: usize) -> Result<GradedHypersurface> {
    GradedHypersurface::diagonal(p, d + 2, 2)
}

fn poly4(p: u64, terms: &[(i64, [u32; 4])]) -> Result<PolynomialFp> {
    let ring = cubic(p)?;
    let f = ring.field();
    Ok(PolynomialFp::from_terms(
        f,
        4,
        terms
            .iter()
            .map(|(c, e)| (Monomial::new(e), u64::from(f.reduce_i128(i128::from(*c))))),
    ))
}

/// Each check returns `Ok(detail)` on success and `Err(detail)` on a
/// mismatch; library errors are mismatches too.
type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lift<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e: Error| e.to_string())
}

fn memberships() -> Check {
    let cases: Vec<(u64, &str, Vec<(i64, [u32; 4])>)> = vec![
        (5, "x0^2", vec![(1, [2, 0, 0, 0])]),
        (7, "x0*x1*x2", vec![(1, [1, 1, 1, 0])]),
        (11, "x0^2*x2^3 - x0^2*x3^3", vec![(1, [2, 0, 3, 0]), (-1, [2, 0, 0, 3])]),
        (
            31,
            "x0*x1*x3*(x2^12 - 10x2^9x3^3 + 15x2^6x3^6 - 4x2^3x3^9 + 12x3^12)",
            vec![
                (1, [1, 1, 12, 1]),
                (-10, [1, 1, 9, 4]),
                (15, [1, 1, 6, 7]),
                (-4, [1, 1, 3, 10]),
                (12, [1, 1, 0, 13]),
            ],
        ),
    ];
    let mut detail = String::new();
    for (p, name, terms) in cases {
        let start = Instant::now();
        let ring = lift(cubic(p))?;
        let f = lift(poly4(p, &terms))?;
        let res = lift(membership_check(&ring, 1, &f))?;
        let secs = start.elapsed().as_secs_f64();
        ensure(res.member, || format!("{name} not in I_1 at p = {p}"))?;
        ensure(secs < 5.0, || format!("p = {p} took {secs:.2} s"))?;
        let _ = write!(detail, "p={p} ok; ");
    }
    Ok(detail.trim_end().to_string())
}

fn quadric_thresholds() -> Check {
    let mut n = 0;
    for d in [2, 3] {
        for p in [3u64, 5] {
            for e in [1u32, 2] {
                let m = lift(m_threshold(&lift(quadric(p, d))?, e))?;
                ensure(m == p.pow(e) - 1, || {
                    format!("Q_{d} p={p} e={e}: m_e = {m}, expected {}", p.pow(e) - 1)
                })?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} cases with m_e = p^e - 1"))
}

fn cubic_thresholds() -> Check {
    let m5 = lift(m_threshold(&lift(cubic(5))?, 1))?;
    ensure(m5 == 1, || format!("p=5 e=1: m_1 = {m5}, expected 1"))?;
    let m7 = lift(m_threshold(&lift(cubic(7))?, 1))?;
    ensure(m7 == 2, || format!("p=7 e=1: m_1 = {m7}, expected 2"))?;
    let m2 = lift(m_threshold(&lift(cubic(5))?, 2))?;
    ensure((8..=9).contains(&m2), || format!("p=5 e=2: m_2 = {m2} outside {{8, 9}}"))?;
    ensure(m2 == CUBIC_M2_P5, || format!("p=5 e=2: m_2 = {m2}, frozen {CUBIC_M2_P5}"))?;
    Ok(format!("m_1(5) = {m5}, m_1(7) = {m7}, m_2(5) = {m2}"))
}

fn strict_below_half() -> Check {
    let rep = lift(fano_report(&lift(cubic(5))?, 2, ProfileOptions::default()))?;
    let upper = &rep.levels[1].alpha_upper;
    ensure(*upper < q(1, 2), || format!("(m_2+1)/24 = {upper} is not < 1/2"))?;
    Ok(format!("(m_2+1)/24 = {} < 1/2", rational_str(upper)))
}

/// Rings of the palindrome and monotonicity criteria with their top level.
fn criterion_rings() -> Result<Vec<(String, GradedHypersurface, u32)>> {
    let mut out = Vec::new();
    for p in [3u64, 5] {
        for d in [2, 3] {
            out.push((format!("Q_{d} p={p}"), quadric(p, d)?, 2));
        }
    }
    out.push(("cubic p=5".into(), cubic(5)?, 2));
    out.push(("cubic p=7".into(), cubic(7)?, 2));
    Ok(out)
}

fn duality() -> Check {
    let mut total = 0;
    for (name, ring, e_hi) in lift(criterion_rings())? {
        for prof in lift(profiles(&ring, 1, e_hi, ProfileOptions::default()))? {
            ensure(prof.duality_ok, || {
                format!("{name} e={}: palindrome fails at m = {:?}", prof.e, prof.duality_failures())
            })?;
            total += prof.b.len();
        }
    }
    Ok(format!("{total} degrees checked"))
}

fn monotonicity() -> Check {
    let mut pairs = 0;
    for (name, ring, e_hi) in lift(criterion_rings())? {
        let profs = lift(profiles(&ring, 1, e_hi, ProfileOptions::default()))?;
        for w in profs.windows(2) {
            let (a, b) = (w[0].alpha_plus_inverse_q(), w[1].alpha_plus_inverse_q());
            ensure(a.is_some() && b.is_some() && a >= b, || {
                format!("{name}: alpha_e + p^-e rises from {a:?} to {b:?} at e = {}", w[1].e)
            })?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} consecutive level pairs non-increasing"))
}

fn toric_exact() -> Check {
    let cases = [
        ("P1xP1", q(1, 2), q(8, 1)),
        ("P2", q(1, 3), q(9, 1)),
        ("P1", q(1, 2), q(2, 1)),
    ];
    let mut detail = String::new();
    for (name, alpha, vol) in cases {
        let start = Instant::now();
        let rep = lift(toric_alpha(&named_fan(name).expect("named fan")))?;
        ensure(rep.alpha == alpha, || format!("{name}: alpha = {}", rep.alpha))?;
        ensure(rep.volume == vol, || format!("{name}: volume = {}", rep.volume))?;
        ensure(start.elapsed() < Duration::from_secs(1), || format!("{name} took over 1 s"))?;
        if name == "P1xP1" {
            ensure(rep.bound == q(1, 3), || format!("P1xP1 bound = {}", rep.bound))?;
        }
        let _ = write!(detail, "{name}: {}, vol {}; ", rational_str(&rep.alpha), rep.volume);
    }
    Ok(format!("{}bound(P1xP1) = 1/3", detail))
}

/// Named fans followed by the seeded random corpus.
pub fn fan_corpus() -> Vec<(String, FanData)> {
    let mut fans: Vec<(String, FanData)> = named_fans()
        .into_iter()
        .map(|(n, f)| (n.to_string(), f))
        .collect();
    for (i, f) in random_fano_fans(FAN_CORPUS_SEED, FAN_CORPUS_SIZE)
        .into_iter()
        .enumerate()
    {
        fans.push((format!("random-{i}"), f));
    }
    fans
}

fn toric_invariants() -> Check {
    let fans = fan_corpus();
    let random = fans.iter().filter(|(n, _)| n.starts_with("random")).count();
    ensure(random >= 10, || format!("only {random} random fans generated"))?;
    for (name, fan) in &fans {
        let rep = lift(toric_alpha(fan)).map_err(|e| format!("{name}: {e}"))?;
        ensure(rep.alpha <= q(1, 2), || format!("{name}: alpha = {} > 1/2", rep.alpha))?;
        ensure(rep.dilation_stable(), || {
            format!("{name}: alpha(r) = {} but alpha(2r) = {}", rep.alpha, rep.alpha_doubled)
        })?;
    }
    Ok(format!("{} fans ({random} random)", fans.len()))
}

fn quadric_vs_toric() -> Check {
    let toric = lift(toric_alpha(&named_fan("P1xP1").expect("named fan")))?.alpha;
    ensure(toric == q(1, 2), || format!("alpha(P1xP1) = {toric}"))?;
    for p in [3u64, 5] {
        let rep = lift(fano_report(&lift(quadric(p, 2))?, 2, ProfileOptions::default()))?;
        for lvl in &rep.levels {
            let pe = p.pow(lvl.e) as i64;
            let want = q(pe - 1, 2 * pe);
            ensure(lvl.alpha_estimate == want, || {
                format!("p={p} e={}: alpha_e/2 = {}", lvl.e, lvl.alpha_estimate)
            })?;
            ensure(&toric - &lvl.alpha_estimate == q(1, 2 * pe), || {
                format!("p={p} e={}: gap is not 1/(2p^e)", lvl.e)
            })?;
        }
    }
    Ok("gap 1/(2p^e) at p in {3,5}, e in {1,2}".into())
}

fn oracle_equivalence() -> Check {
    let cfg = OracleConfig::default();
    let cases = [(lift(quadric(3, 2))?, 1u32), (lift(cubic(5))?, 1), (lift(quadric(3, 2))?, 2)];
    let mut degrees = 0;
    for (ring, e) in &cases {
        let profs = lift(profiles(ring, *e, *e, ProfileOptions::default()))?;
        let prof = &profs[0];
        for (m, &b) in prof.b.iter().enumerate() {
            let naive = lift(naive_b_dimension(ring, *e, m as u64, &cfg))?;
            ensure(naive == b, || {
                format!("{} e={e} m={m}: engine {b}, oracle {naive}", ring.display_polynomial())
            })?;
            degrees += 1;
        }
    }
    let fans = fan_corpus();
    for (name, fan) in &fans {
        let engine = lift(toric_alpha(fan))?.alpha;
        let naive = lift(naive_toric_alpha(fan, &cfg)).map_err(|e| format!("{name}: {e}"))?;
        ensure(engine == naive, || format!("{name}: engine {engine}, oracle {naive}"))?;
    }
    Ok(format!("{degrees} degrees and {} fans agree", fans.len()))
}

fn cubic_free_ranks() -> Check {
    let profs = lift(profiles(&lift(cubic(5))?, 1, 2, ProfileOptions::default()))?;
    let mut detail = String::new();
    for (prof, &want) in profs.iter().zip(&CUBIC_FREE_RANKS_P5) {
        let a = prof.free_rank.ok_or_else(|| format!("a_{} missing", prof.e))?;
        ensure(a == want, || format!("a_{} = {a}, frozen {want}", prof.e))?;
        let s = prof.s_raw.clone().ok_or("s_raw missing")?;
        let expect = BigRational::new(BigInt::from(a), BigInt::from(5u64.pow(3 * prof.e)));
        ensure(s == expect, || format!("s_raw = {s}"))?;
        let _ = write!(detail, "a_{} = {a}, s_raw = {} ≈ {:.5}; ", prof.e, rational_str(&s), to_f64(&s));
    }
    let lim = known_cubic_signature_limit();
    let _ = write!(detail, "known limit {} ≈ {:.5}", rational_str(&lim), to_f64(&lim));
    Ok(detail)
}

fn to_f64(x: &BigRational) -> f64 {
    num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::NAN)
}

fn fedder() -> Check {
    let cone = |p| GradedHypersurface::diagonal(p, 3, 3);
    let at5 = lift(fedder_is_fsplit(&lift(cone(5))?, 1))?;
    let at7 = lift(fedder_is_fsplit(&lift(cone(7))?, 1))?;
    ensure(!at5, || "elliptic cone reported F-split at p = 5".into())?;
    ensure(at7, || "elliptic cone reported not F-split at p = 7".into())?;
    Ok("not F-split at p = 5, F-split at p = 7".into())
}

/// Runs criterion `id`, timing it against its budget.
pub fn run_criterion(id: u32) -> CriterionResult {
    let (_, name, budget_s) = CRITERIA
        .iter()
        .copied()
        .find(|c| c.0 == id)
        .unwrap_or((id, "unknown criterion", 0));
    let start = Instant::now();
    let outcome = match id {
        1 => memberships(),
        2 => quadric_thresholds(),
        3 => cubic_thresholds(),
        4 => strict_below_half(),
        5 => duality(),
        6 => monotonicity(),
        7 => toric_exact(),
        8 => toric_invariants(),
        9 => quadric_vs_toric(),
        10 => oracle_equivalence(),
        11 => cubic_free_ranks(),
        12 => fedder(),
        _ => Err(format!("no criterion {id}")),
    };
    let elapsed = start.elapsed();
    let budget = Duration::from_secs(budget_s);
    let (passed, mut detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if passed && elapsed > budget {
        detail = format!("over budget: {detail}");
    }
    CriterionResult {
        id,
        name,
        passed: passed && elapsed <= budget,
        detail,
        elapsed,
        budget,
    }
}

/// Criteria 1–12; criterion 10 only when `deep`.
pub fn run_all(deep: bool) -> Vec<CriterionResult> {
    CRITERIA
        .iter()
        .filter(|c| deep || c.0 != 10)
        .map(|c| run_criterion(c.0))
        .collect()
}
