//! Acceptance suite: one test per criterion, each printing a PASS line.
//!
//! Criterion 3's first clause asserts that every palindromic factor is
//! privileged on every oracle. That claim is false outside rich subshifts
//! (Thue-Morse contains the palindromic factor "aababbaabbabaa" whose only
//! borders "a" and "aa" occur 8 and 3 times, so it is a complete first
//! return to nothing); the clause is implemented as stated and is expected
//! to fail on Thue-Morse, with the counterexample named in the assertion.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, OnceLock};

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use subshift_core::combinatorics::{
    self, distinct_privileged_factors, is_privileged, power_witness, repulsiveness_index,
    PrivilegedTree,
};
use subshift_core::language::sources::{sturmian_oracle, substitution_oracle, SturmianSpec};
use subshift_core::metrics::{
    self, bounded_powers_verdict, d_sup, d_tau, lipschitz_profile, privileged_chain,
    privileged_ratio, PowersVerdict, TailBound,
};
use subshift_core::zeta::{self, ExponentKind};
use subshift_core::{ChoiceFunction, EdgeKind, FactorOracle, WeightFunction, Word};

// ---------------------------------------------------------------------------
// shared fixtures

struct Oracles;

impl Oracles {
    fn fibonacci() -> &'static Arc<FactorOracle> {
        static CELL: OnceLock<Arc<FactorOracle>> = OnceLock::new();
        CELL.get_or_init(|| {
            let rules: BTreeMap<char, String> =
                [('0', "1".to_string()), ('1', "10".to_string())].into();
            Arc::new(substitution_oracle(&rules, '1', 2400).unwrap())
        })
    }

    fn thue_morse() -> &'static Arc<FactorOracle> {
        static CELL: OnceLock<Arc<FactorOracle>> = OnceLock::new();
        CELL.get_or_init(|| {
            let rules: BTreeMap<char, String> =
                [('a', "ab".to_string()), ('b', "ba".to_string())].into();
            Arc::new(substitution_oracle(&rules, 'a', 5200).unwrap())
        })
    }

    /// Sturmian oracle with coefficients drawn from a seeded generator.
    fn seeded_sturmian() -> &'static Arc<FactorOracle> {
        static CELL: OnceLock<Arc<FactorOracle>> = OnceLock::new();
        CELL.get_or_init(|| {
            let mut rng = XorShift::new(0x5EED_0001);
            let coeffs: Vec<u32> = (0..12).map(|_| (rng.next() % 3 + 1) as u32).collect();
            let spec = SturmianSpec::cyclic(coeffs).unwrap();
            Arc::new(sturmian_oracle(&spec, 3000).unwrap())
        })
    }

    fn linear_sturmian() -> &'static Arc<FactorOracle> {
        static CELL: OnceLock<Arc<FactorOracle>> = OnceLock::new();
        CELL.get_or_init(|| Arc::new(sturmian_oracle(&SturmianSpec::linear(), 520).unwrap()))
    }
}

fn all_oracles() -> [(&'static str, &'static Arc<FactorOracle>); 3] {
    [
        ("fibonacci", Oracles::fibonacci()),
        ("thue-morse", Oracles::thue_morse()),
        ("seeded-sturmian", Oracles::seeded_sturmian()),
    ]
}

struct XorShift(u64);

impl XorShift {
    fn new(seed: u64) -> Self {
        XorShift(seed.max(1))
    }

    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }
}

// ---------------------------------------------------------------------------
// criteria

#[test]
fn criterion_01_privileged_count_law() {
    const SAMPLES: usize = 500;
    const MAX_LEN: usize = 40;
    for (name, oracle) in all_oracles() {
        let by_length: Vec<Vec<Word>> = (0..=MAX_LEN)
            .map(|n| oracle.factors_of_length(n).unwrap())
            .collect();
        let mut rng = XorShift::new(0xC0117_u64 + name.len() as u64);
        for _ in 0..SAMPLES {
            let len = (rng.next() as usize % MAX_LEN) + 1;
            let pool = &by_length[len];
            let u = &pool[rng.next() as usize % pool.len()];
            assert_eq!(
                distinct_privileged_factors(u),
                u.len() + 1,
                "{name}: factor {:?}",
                u
            );
        }
    }
    println!("criterion 1 (privileged count law, 500 factors x 3 oracles): PASS");
}

#[test]
fn criterion_02_return_branching_identity() {
    for (name, oracle) in all_oracles() {
        let tree = PrivilegedTree::build(oracle, 30).unwrap();
        for record in tree.records() {
            let lhs = record
                .a_tilde()
                .unwrap_or_else(|| panic!("{name}: truncated returns at {:?}", record.word));
            let rhs: u64 = combinatorics::special_between(oracle, &record.word)
                .unwrap()
                .iter()
                .map(|r| combinatorics::special_record(oracle, r).unwrap().a as u64)
                .sum();
            assert_eq!(lhs, rhs, "{name}: ã vs Σ a(r) at {:?}", record.word);
        }
    }
    println!("criterion 2 (ã(u) = Σ a(r) for |u| <= 30 on 3 oracles): PASS");
}

#[test]
fn criterion_03_palindrome_bridge() {
    let mut failures: Vec<String> = Vec::new();

    // Clause A: every palindromic factor of length <= 40 is privileged, on
    // every oracle. (Expected to fail on Thue-Morse: the proposition needs
    // richness; see the module docs.)
    for (name, oracle) in all_oracles() {
        for n in 0..=40usize {
            for w in oracle.factors_of_length(n).unwrap() {
                if w.is_palindrome() && !is_privileged(&w) {
                    failures.push(format!(
                        "{name}: palindromic factor {} of length {n} is not privileged",
                        oracle.alphabet().format(&w)
                    ));
                }
            }
        }
    }

    // Clause B: on the Sturmian oracle the privileged and palindromic sets
    // coincide length-for-length up to 61.
    let sturmian = Oracles::seeded_sturmian();
    let tree = PrivilegedTree::build(sturmian, 61).unwrap();
    for n in 0..=61usize {
        let palindromes: BTreeSet<Word> = sturmian
            .factors_of_length(n)
            .unwrap()
            .into_iter()
            .filter(|w| w.is_palindrome())
            .collect();
        let privileged: BTreeSet<Word> = tree
            .records()
            .iter()
            .filter(|r| r.word.len() == n)
            .map(|r| r.word.clone())
            .collect();
        if palindromes != privileged {
            failures.push(format!(
                "sturmian: privileged/palindrome mismatch at length {n}"
            ));
        }
    }

    // Clause C: p_pr(n) + p_pr(n+1) = p_rs(n) + 2 for n <= 60 on the
    // Sturmian oracle.
    let p_pr = tree.privileged_complexity();
    for n in 0..=60usize {
        let p_rs = sturmian.right_special_count(n).unwrap();
        if p_pr[n] + p_pr[n + 1] != p_rs + 2 {
            failures.push(format!(
                "sturmian: p_pr({n}) + p_pr({}) = {} but p_rs({n}) + 2 = {}",
                n + 1,
                p_pr[n] + p_pr[n + 1],
                p_rs + 2
            ));
        }
    }

    if failures.is_empty() {
        println!("criterion 3 (palindrome bridge): PASS");
    } else {
        println!("criterion 3 (palindrome bridge): FAIL");
        panic!(
            "criterion 3 clause failures ({}):\n{}\n\
             note: the \"every palindrome is privileged\" clause is a known\n\
             erratum of the source material (it requires richness); the\n\
             Sturmian clauses above it pass.",
            failures.len(),
            failures.join("\n")
        );
    }
}

#[test]
fn criterion_04_metric_sandwich() {
    let oracle = Oracles::fibonacci();
    let weight = WeightFunction::default_weight();
    let depth = 120usize;
    let ell = repulsiveness_index(oracle, 200).unwrap().value.unwrap();

    // 50 deterministic random point pairs.
    let mut rng = XorShift::new(0x9A1A_D0E5);
    let mut pairs = Vec::new();
    while pairs.len() < 50 {
        let len = (rng.next() % 10) as usize;
        let pool = oracle.factors_of_length(len).unwrap();
        let base_x = pool[rng.next() as usize % pool.len()].clone();
        let base_y = pool[rng.next() as usize % pool.len()].clone();
        let sx = rng.next();
        let sy = rng.next();
        let x = ChoiceFunction::seeded(oracle.clone(), sx).point(&base_x).unwrap();
        let y = ChoiceFunction::seeded(oracle.clone(), sy).point(&base_y).unwrap();
        if metrics::meet(&x, &y, depth).is_ok() {
            pairs.push((x, y));
        }
    }

    let taus: Vec<ChoiceFunction> = (1..=20u64)
        .map(|s| ChoiceFunction::seeded(oracle.clone(), s))
        .collect();

    let mut violations = 0usize;
    for (x, y) in &pairs {
        let lo = metrics::d_inf(x, y, &weight, EdgeKind::Privileged, depth).unwrap();
        let hi = d_sup(x, y, &weight, EdgeKind::Privileged, depth, Some(&ell)).unwrap();
        let hi_bound = hi.upper_bound().expect("geometric tail available");
        for tau in &taus {
            let mid = d_tau(x, y, tau, &weight, EdgeKind::Privileged, depth, Some(&ell)).unwrap();
            if !(lo <= mid.value && mid.value <= hi_bound) {
                violations += 1;
            }
        }
    }
    assert_eq!(violations, 0, "sandwich violations");
    println!("criterion 4 (d̃_inf <= d̃_τ <= d̃_sup + tail, 50 pairs x 20 τ, exact): PASS");
}

#[test]
fn criterion_05_graph_formula_agreement() {
    let oracle = Oracles::fibonacci();
    let weight = WeightFunction::default_weight();
    let depth = 25usize;
    let tau = ChoiceFunction::lexmin(oracle.clone());
    let graph =
        subshift_core::graph::build_approx_graph(&tau, depth, EdgeKind::Privileged, &weight)
            .unwrap();
    let mut checked = 0usize;
    'outer: for i in 0..graph.vertex_count() {
        for j in (i + 1)..graph.vertex_count() {
            let x = &graph.vertices()[i].point;
            let y = &graph.vertices()[j].point;
            let meet = match metrics::priv_meet(x, y, depth) {
                Ok(m) => m,
                Err(_) => continue,
            };
            if meet.len() > depth {
                continue;
            }
            let formula = d_tau(x, y, &tau, &weight, EdgeKind::Privileged, depth, None).unwrap();
            if formula.tail != TailBound::Zero {
                continue;
            }
            let dijkstra = graph.distance(i, j).unwrap();
            assert_eq!(
                formula.value, dijkstra,
                "formula vs shortest path at vertices {i}, {j}"
            );
            checked += 1;
            if checked == 30 {
                break 'outer;
            }
        }
    }
    assert!(checked >= 30, "only {checked} in-truncation pairs available");
    println!("criterion 5 (formula = Dijkstra on 30 vertex pairs, exact): PASS");
}

#[test]
fn criterion_06_characterization_bounded_side() {
    let oracle = Oracles::fibonacci();
    let weight = WeightFunction::default_weight();

    let (verdict, evidence) = bounded_powers_verdict(oracle, &weight, 512).unwrap();
    assert_eq!(verdict, PowersVerdict::Bounded, "{evidence:?}");

    let ell = repulsiveness_index(oracle, 100).unwrap().value.unwrap();
    assert!(ell.is_positive(), "ℓ at N = 100 must be strictly positive");

    // Geometric bound from the theorem's proof: Σ_{k>=1} (c̄ δ(ℓ+1))^k,
    // with the measured ℓ; the profile within the same window never exceeds
    // it (tolerance 1e-9, exact arithmetic is actually strict).
    let bound = weight.geometric_bound(&ell).unwrap().expect("ℓ > 0");
    let profile = lipschitz_profile(oracle, &weight, 100, &[]).unwrap();
    let tolerance = BigRational::new(1.into(), 1_000_000_000i64.into());
    assert!(
        profile.max <= &bound + &tolerance,
        "profile {} exceeds geometric bound {}",
        profile.max,
        bound
    );
    println!(
        "criterion 6 (bounded side: verdict bounded, ℓ_100 = {} > 0, profile {} <= {}): PASS",
        ell, profile.max, bound
    );
}

#[test]
fn criterion_07_characterization_unbounded_side() {
    let weight = WeightFunction::default_weight();
    let c_under = weight.c_under().clone();

    // (a) verdict on a_n = n
    let linear = Oracles::linear_sturmian();
    let (verdict, evidence) = bounded_powers_verdict(linear, &weight, 512).unwrap();
    assert_eq!(verdict, PowersVerdict::Unbounded, "{evidence:?}");

    // (b) profile doubling: a reported pair D1 < D2 with
    // profile(D2) > 2 profile(D1), via the public profile alone.
    let mut found = None;
    'search: for d1 in 2..=64usize {
        let p1 = lipschitz_profile(linear, &weight, d1, &[]).unwrap().max;
        if !p1.is_positive() {
            continue;
        }
        for factor in [2usize, 4, 8] {
            let d2 = d1 * factor;
            if d2 > 512 {
                break;
            }
            let p2 = lipschitz_profile(linear, &weight, d2, &[]).unwrap().max;
            if p2 > BigRational::from_integer(2.into()) * &p1 {
                found = Some((d1, d2, p1.clone(), p2));
                break 'search;
            }
        }
    }
    let (d1, d2, p1, p2) = found.expect("no profile-doubling depth pair found");

    // (c) adversarial power-witness points realize r >= c_·q, exactly as
    // lower bounds, per the backward construction with p = 2q + 1.
    //
    // q = 3 runs on a_n = n itself (u = s_6, u^7 in the language). Larger q
    // cannot fit on a_n = n at desk scale: a power u^(2q+1) needs a
    // coefficient a_{m+1} >= 2q, and for a_n = n the witness base is then
    // s_{2q} whose length grows factorially (|s_10| is already 7.4 million).
    // q = 5 and q = 10 therefore run on Sturmian oracles with one huge
    // coefficient, where the same construction fits in a few hundred symbols.
    let mut realized = Vec::new();
    {
        let spec = SturmianSpec::linear();
        let deep = Arc::new(sturmian_oracle(&spec, 11500).unwrap());
        let s6 = spec.standard_word(6).unwrap();
        let r = witness_ratio(&deep, &s6, 7, 3, &weight, 11500);
        realized.push((3usize, r));
    }
    for (q, coeff) in [(5usize, 12u32), (10usize, 22u32)] {
        let spec = SturmianSpec::cyclic(vec![1, coeff]).unwrap();
        let oracle = Arc::new(sturmian_oracle(&spec, 300).unwrap());
        let one = oracle.alphabet().parse("1").unwrap();
        let r = witness_ratio(&oracle, &one, (2 * q + 1) as u32, q, &weight, 300);
        realized.push((q, r));
    }
    for (q, r) in &realized {
        let target = BigRational::from_integer((*q as i64).into()) * &c_under;
        assert!(
            *r >= target,
            "q = {q}: r = {r} below c_·q = {target}"
        );
    }
    println!(
        "criterion 7 (unbounded side: verdict unbounded; profile({d2}) = {p2} > 2·profile({d1}) = 2·{p1}; \
         witness ratios {:?} >= c_·q): PASS",
        realized
            .iter()
            .map(|(q, r)| format!("q={q}: {:.3}", r.to_f64().unwrap()))
            .collect::<Vec<_>>()
    );
}

/// r(ξ, m) for the lexmin point through the witness head v_p, at the chain
/// index m of v_q; truncated, hence an exact lower bound.
fn witness_ratio(
    oracle: &Arc<FactorOracle>,
    base: &Word,
    p: u32,
    q: usize,
    weight: &WeightFunction,
    depth: usize,
) -> BigRational {
    let witness = power_witness(oracle, base, p).unwrap();
    let v_p = witness.chain.last().unwrap();
    let v_q = &witness.chain[q - 1];
    let point = ChoiceFunction::lexmin(oracle.clone()).point(v_p).unwrap();
    let chain = privileged_chain(&point, depth).unwrap();
    let m = chain
        .iter()
        .position(|&l| l == v_q.len())
        .expect("v_q on the chain");
    privileged_ratio(&point, weight, m, depth).unwrap().unwrap()
}

#[test]
fn criterion_08_zeta_identities() {
    let s_grid = [1.2, 1.5, 2.0, 3.0];
    let n_max = 500usize;
    let weight = WeightFunction::default_weight();
    for (name, oracle) in all_oracles() {
        for &s in &s_grid {
            for kind in [EdgeKind::RightSpecial, EdgeKind::Privileged] {
                let check = zeta::zeta_spectral(oracle, &weight, kind, s, n_max).unwrap();
                assert!(
                    check.identity_ok,
                    "{name} {kind:?} s={s}: identity gap {}",
                    check.identity_gap
                );
            }
        }
        let audit = zeta::inequality_audit(oracle, &weight, &s_grid, n_max).unwrap();
        // Everything that is a theorem for general minimal aperiodic
        // subshifts must hold with zero violations.
        assert!(
            audit.provable_hold,
            "{name}: provable inequality violated: {audit:?}"
        );
        if name == "thue-morse" {
            // The k = 0 domination needs right-special balance; Thue-Morse
            // is unbalanced and indeed violates it (privileged counts are
            // lacunary while p_rs >= 2 at every length). Pin that the
            // violations are confined to those balance-dependent rows.
            let k0_viol = audit
                .rows
                .iter()
                .filter(|r| !r.tilde_dominates)
                .collect::<Vec<_>>();
            assert!(!k0_viol.is_empty(), "expected the k = 0 erratum to show");
            assert!(
                k0_viol.iter().all(|r| r.requires_balance),
                "{name}: violation outside the balance-dependent rows: {audit:?}"
            );
        } else {
            assert!(audit.all_hold, "{name}: inequality violations: {audit:?}");
        }
    }
    println!(
        "criterion 8 (zeta trace identities and inequalities, N = 500): PASS \
         (k = 0 domination asserted on the balanced oracles; on Thue-Morse it \
         provably fails and the violation is pinned — see the decisions ledger)"
    );
}

#[test]
fn criterion_09_exponents() {
    let sturmian = Oracles::seeded_sturmian();
    let beta = zeta::exponent_estimate(sturmian, ExponentKind::Beta, (100, 2000)).unwrap();
    assert!(
        (0.85..=1.15).contains(&beta.value),
        "sturmian beta = {}",
        beta.value
    );
    for (name, oracle) in all_oracles() {
        let beta = zeta::exponent_estimate(oracle, ExponentKind::Beta, (100, 2000)).unwrap();
        let beta_rs =
            zeta::exponent_estimate(oracle, ExponentKind::BetaRightSpecial, (100, 2000)).unwrap();
        let beta_pr =
            zeta::exponent_estimate(oracle, ExponentKind::BetaPrivileged, (50, 400)).unwrap();
        assert!(
            beta_pr.value <= beta_rs.value,
            "{name}: beta_pr {} > beta_rs {}",
            beta_pr.value,
            beta_rs.value
        );
        assert!(
            beta_rs.value <= beta.value - 1.0 + 0.15,
            "{name}: beta_rs {} > beta - 1 + 0.15 = {}",
            beta_rs.value,
            beta.value - 1.0 + 0.15
        );
    }
    println!("criterion 9 (beta in [0.85, 1.15]; beta_pr <= beta_rs <= beta - 1 + 0.15): PASS");
}

#[test]
fn criterion_10_determinism() {
    let config = concat!(
        r#"{"subshift": {"type": "substitution", "rules": {"0": "1", "1": "10"}, "seed": "1"},"#,
        r#" "depth": 130,"#,
        r#" "tau": {"strategies": ["lexmin", {"seeded": 1}]},"#,
        r#" "analyses": ["structure", "balance", "powers", "metrics", "lipschitz", "zeta"]}"#
    );
    let dir = std::env::temp_dir().join("subshift-lab-acceptance");
    std::fs::create_dir_all(&dir).unwrap();
    let config_path = dir.join("determinism.json");
    std::fs::write(&config_path, config).unwrap();
    let bin = env!("CARGO_BIN_EXE_subshift-lab");
    let mut outputs = Vec::new();
    for run in 0..2 {
        let out = dir.join(format!("report-{run}.json"));
        let status = std::process::Command::new(bin)
            .arg("analyze")
            .arg(&config_path)
            .arg("--out")
            .arg(&out)
            .status()
            .unwrap();
        assert!(status.success());
        outputs.push(std::fs::read(&out).unwrap());
    }
    assert_eq!(outputs[0], outputs[1], "reports differ between runs");
    assert!(!outputs[0].is_empty());
    println!("criterion 10 (two analyze runs are byte-identical): PASS");
}
