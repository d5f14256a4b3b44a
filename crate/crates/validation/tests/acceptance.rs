//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

use std::time::{Duration, Instant};

use nuca::conjugacy::{embed_in_ca, pack_spec};
use nuca::debruijn::{
    decide_injective, decide_surjective, injectivity_witness_oracle, surjectivity_oracle, InjectivityVerdict,
    SurjectivityOracle, SurjectivityVerdict,
};
use nuca::dynamics::{
    certify_strongly_blocking, classify_ca, find_strongly_blocking, refute_blocking, simulate_certificate,
    CaClassification, ClassifyBounds,
};
use nuca::engine::{iterate, step};
use nuca::random::{random_config, random_default_perturbed, random_spec, ConfigShape, SpecShape};
use nuca::zoo::{self, checks};
use nuca::{Alphabet, Budget, Distance, EpConfig, LocalRule, NuCaSpec, Word};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

/// Name, check and time limit in seconds.
type Criterion = (&'static str, fn() -> Outcome, u64);

fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Brute force: no word on `[position - r, position + |w| + r)` maps onto `w`.
fn is_orphan(spec: &NuCaSpec, w: &Word, position: i64) -> bool {
    let r = spec.radius();
    let d = 2 * r + 1;
    spec.alphabet()
        .words(w.len() + 2 * r)
        .all(|src| (0..w.len()).any(|j| spec.eval_at(position + j as i64, &src[j..j + d]) != w[j]))
}

fn q(n: usize) -> Alphabet {
    Alphabet::new(n).unwrap()
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn verdict_table() -> Outcome {
    let budget = Budget::default();
    let q2 = q(2);
    let cases = [
        (
            "shift-identity-at-origin",
            zoo::shift_identity_at_origin(),
            false,
            false,
        ),
        ("xor-frozen-zero", zoo::xor_frozen_zero(), false, false),
        ("shift-toward-center", zoo::shift_toward_center(), false, true),
        (
            "uniform shift",
            NuCaSpec::uniform(LocalRule::copy(q2, 1, 1)),
            true,
            true,
        ),
        (
            "uniform constant",
            NuCaSpec::uniform(LocalRule::constant(q2, 1, 0)),
            false,
            false,
        ),
        ("identity", NuCaSpec::uniform(LocalRule::identity(q2, 1)), true, true),
    ];
    for (name, spec, s, i) in cases {
        let sv = decide_surjective(&spec, &budget).map_err(e2s)?;
        let iv = decide_injective(&spec, &budget).map_err(e2s)?;
        ensure(
            sv.is_surjective() == s && iv.is_injective() == i,
            format!("{name}: {sv:?} / {iv:?}"),
        )?;
    }
    let xor_frozen = zoo::xor_frozen_zero();
    let (zero, one) = (EpConfig::constant(0), EpConfig::constant(1));
    ensure(
        step(&xor_frozen, &zero)
            .unwrap()
            .equals(&step(&xor_frozen, &one).unwrap()),
        "all-0 and all-1 have different images under xor-frozen-zero",
    )?;
    Ok("6 verdict pairs exact".into())
}

fn oracle_agreement() -> Outcome {
    let budget = Budget::default();
    let mut rng = seeded(2);
    let shape = SpecShape {
        alphabet: q(2),
        radius: 1,
        max_k: 1,
        max_period: 1,
    };
    let (mut non_surj, mut non_inj) = (0, 0);
    for t in 0..200 {
        let spec = random_spec(&mut rng, shape);
        match decide_surjective(&spec, &budget).map_err(e2s)? {
            SurjectivityVerdict::NotSurjective { word, position } => {
                non_surj += 1;
                ensure(
                    is_orphan(&spec, &word, position),
                    format!("#{t}: witness {word}@{position} has a preimage"),
                )?;
                let o = surjectivity_oracle(&spec, 8, &budget).map_err(e2s)?;
                ensure(
                    o.is_refuted(),
                    format!("#{t}: oracle found no orphan up to n = 8 for {spec}"),
                )?;
            }
            SurjectivityVerdict::Surjective => {
                let o = surjectivity_oracle(&spec, 6, &budget).map_err(e2s)?;
                ensure(
                    o == SurjectivityOracle::ConsistentUpTo(6),
                    format!("#{t}: oracle {o:?} contradicts surjective {spec}"),
                )?;
            }
        }
        let oracle = injectivity_witness_oracle(&spec, &budget).map_err(e2s)?;
        match decide_injective(&spec, &budget).map_err(e2s)? {
            InjectivityVerdict::NotInjective { left, right } => {
                non_inj += 1;
                ensure(!left.equals(&right), format!("#{t}: witness pair is equal"))?;
                ensure(
                    step(&spec, &left).unwrap().equals(&step(&spec, &right).unwrap()),
                    format!("#{t}: witness images differ for {left} / {right}"),
                )?;
                ensure(oracle.is_some(), format!("#{t}: oracle found no collision for {spec}"))?;
            }
            InjectivityVerdict::Injective => {
                ensure(
                    oracle.is_none(),
                    format!("#{t}: oracle collision {oracle:?} for injective {spec}"),
                )?;
            }
        }
        // a certified strongly blocking word of the tail rule must survive refutation
        let f = &spec.left_tail()[0];
        if let Some(cert) = find_strongly_blocking(f, 1, 3, &budget).map_err(e2s)? {
            let refuted = refute_blocking(f, &cert.word, 1, 8, 8, &budget).map_err(e2s)?;
            ensure(refuted.is_none(), format!("#{t}: certified word {} refuted", cert.word))?;
        }
    }
    // supplementary specs mixing surjective elementary rules, so that the
    // surjective and injective branches are exercised too
    let surjective: Vec<LocalRule> = (0..=255u8)
        .map(LocalRule::elementary)
        .filter(|f| {
            decide_surjective(&NuCaSpec::uniform(f.clone()), &budget)
                .unwrap()
                .is_surjective()
        })
        .collect();
    let (mut surj, mut inj) = (0, 0);
    for t in 0..200 {
        let pick = |rng: &mut ChaCha8Rng| surjective[rng.gen_range(0..surjective.len())].clone();
        let k = rng.gen_range(0..=1);
        let window = (0..2 * k + 1).map(|_| pick(&mut rng)).collect();
        let spec = NuCaSpec::new(k, window, vec![pick(&mut rng)], vec![pick(&mut rng)]).unwrap();
        let sv = decide_surjective(&spec, &budget).map_err(e2s)?;
        let o = surjectivity_oracle(&spec, if sv.is_surjective() { 6 } else { 8 }, &budget).map_err(e2s)?;
        ensure(
            sv.is_surjective() != o.is_refuted(),
            format!("mixed #{t}: {sv:?} vs oracle {o:?}"),
        )?;
        let iv = decide_injective(&spec, &budget).map_err(e2s)?;
        let oracle = injectivity_witness_oracle(&spec, &budget).map_err(e2s)?;
        ensure(
            iv.is_injective() == oracle.is_none(),
            format!("mixed #{t}: {iv:?} vs oracle {oracle:?}"),
        )?;
        if let InjectivityVerdict::NotInjective { left, right } = &iv {
            ensure(
                step(&spec, left).unwrap().equals(&step(&spec, right).unwrap()),
                format!("mixed #{t}: bad witness"),
            )?;
        }
        surj += sv.is_surjective() as usize;
        inj += iv.is_injective() as usize;
    }
    Ok(format!(
        "200 specs, {non_surj} non-surjective, {non_inj} non-injective; 200 mixed specs, {surj} surjective, {inj} injective; 0 contradictions"
    ))
}

fn structural_implications() -> Outcome {
    let budget = Budget::default();
    let mut rng = seeded(3);
    let mut injective = 0;
    for t in 0..200 {
        let spec = random_default_perturbed(&mut rng, q(2), 1, 2);
        if decide_injective(&spec, &budget).map_err(e2s)?.is_injective() {
            injective += 1;
            let default = NuCaSpec::uniform(spec.default_rule().unwrap().clone());
            ensure(
                decide_injective(&default, &budget).map_err(e2s)?.is_injective(),
                format!("#{t}: default not injective"),
            )?;
            ensure(
                decide_surjective(&spec, &budget).map_err(e2s)?.is_surjective(),
                format!("#{t}: injective but not surjective"),
            )?;
        }
    }
    // supplementary dνCA over injective elementary rules
    let injective_rules: Vec<LocalRule> = (0..=255u8)
        .map(LocalRule::elementary)
        .filter(|f| {
            decide_injective(&NuCaSpec::uniform(f.clone()), &budget)
                .unwrap()
                .is_injective()
        })
        .collect();
    let mut extra = 0;
    for t in 0..200 {
        let pick = |rng: &mut ChaCha8Rng| injective_rules[rng.gen_range(0..injective_rules.len())].clone();
        let default = pick(&mut rng);
        let k = rng.gen_range(0..=2);
        let window = (0..2 * k + 1)
            .map(|_| {
                if rng.gen_ratio(1, 5) {
                    LocalRule::elementary(rng.gen())
                } else {
                    pick(&mut rng)
                }
            })
            .collect();
        let spec = NuCaSpec::default_perturbed(default.clone(), window).unwrap();
        if decide_injective(&spec, &budget).map_err(e2s)?.is_injective() {
            extra += 1;
            ensure(
                decide_surjective(&spec, &budget).map_err(e2s)?.is_surjective(),
                format!("biased #{t}: injective but not surjective"),
            )?;
        }
    }
    Ok(format!(
        "200 specs, {injective} injective; 200 biased specs, {extra} injective; 0 violations"
    ))
}

fn conjugacy_and_embedding() -> Outcome {
    let budget = Budget::default();
    let mut rng = seeded(4);
    for t in 0..100 {
        let shape = SpecShape {
            alphabet: q(2),
            radius: 1 + t % 2,
            max_k: 2,
            max_period: 2,
        };
        let spec = random_spec(&mut rng, shape);
        let x = random_config(
            &mut rng,
            ConfigShape {
                alphabet: q(2),
                max_period: 3,
                max_center: 8,
                max_offset: 5,
            },
        );
        let (map, packed) = pack_spec(&spec, &budget).map_err(e2s)?;
        let emb = embed_in_ca(&spec, &budget).map_err(e2s)?;
        let ca = NuCaSpec::uniform(emb.ca().clone());
        let (mut a, mut b, mut c) = (x.clone(), map.pack_config(&x), emb.annotate(&x));
        for s in 1..=20 {
            a = step(&spec, &a).map_err(e2s)?;
            b = step(&packed, &b).map_err(e2s)?;
            c = step(&ca, &c).map_err(e2s)?;
            ensure(
                map.pack_config(&a).equals(&b),
                format!("#{t}: packing differs at step {s}"),
            )?;
            ensure(
                emb.annotate(&a).equals(&c),
                format!("#{t}: embedding differs at step {s}"),
            )?;
        }
    }
    for e in zoo::catalog() {
        let (_, packed) = pack_spec(&e.spec.with_reduced_tails(), &budget).map_err(e2s)?;
        let same = decide_surjective(&e.spec, &budget).map_err(e2s)?.is_surjective()
            == decide_surjective(&packed, &budget).map_err(e2s)?.is_surjective()
            && decide_injective(&e.spec, &budget).map_err(e2s)?.is_injective()
                == decide_injective(&packed, &budget).map_err(e2s)?.is_injective();
        ensure(same, format!("{}: verdicts change under packing", e.name))?;
    }
    Ok("100 pairs x 20 steps exact; zoo verdicts invariant".into())
}

fn dynamics_certificates() -> Outcome {
    let budget = Budget::default();
    let bounds = ClassifyBounds::default();
    let mut failures = Vec::new();

    let f9 = zoo::f9_rule();
    if certify_strongly_blocking(&f9, &"202".parse().unwrap(), 1, &budget)
        .map_err(e2s)?
        .is_none()
    {
        failures.push("202 is not certified strongly 1-blocking for f9".to_string());
    }

    let spread = zoo::spread_two_rule();
    let mut rng = seeded(5);
    match classify_ca(&spread, &bounds, &budget).map_err(e2s)? {
        CaClassification::AlmostEquicontinuousCert { certificate } if certificate.word.to_string() == "2" => {
            let mismatches = simulate_certificate(&spread, &certificate, 50, 20, &mut rng).map_err(e2s)?;
            if mismatches != 0 {
                failures.push(format!("spread-two certificate: {mismatches} column mismatches"));
            }
        }
        other => failures.push(format!("spread-two classified as {other:?}")),
    }

    let q2 = q(2);
    match classify_ca(&LocalRule::identity(q2, 1), &bounds, &budget).map_err(e2s)? {
        CaClassification::Equicontinuous {
            preperiod: 0,
            period: 1,
            ..
        } => {}
        other => failures.push(format!("identity classified as {other:?}")),
    }
    match classify_ca(&LocalRule::copy(q2, 1, 1), &bounds, &budget).map_err(e2s)? {
        CaClassification::NoBlockingWordUpTo { max_len: 4, .. } => {}
        other => failures.push(format!("shift classified as {other:?}")),
    }

    let passed = 5 - failures.len();
    if failures.is_empty() {
        Ok("5 of 5 clauses: certificates and classifications exact, 0 column mismatches".into())
    } else {
        Err(format!("{passed} of 5 clauses hold; failing: {}", failures.join("; ")))
    }
}

fn zoo_checks() -> Outcome {
    let q3 = q(3);
    let words = |max: usize| (0..=max).flat_map(move |l| q3.words(l));
    for u in words(4) {
        for flag in [false, true] {
            let s = checks::RewriteState::new(u.clone(), flag);
            ensure(
                checks::rewrite_run(&s, 10_000).is_some(),
                format!("rewriting ({u}, {flag}) does not terminate"),
            )?;
        }
    }
    for u in words(5) {
        ensure(
            checks::ones_recurrence(&u, 10_000).is_some(),
            format!("sequence from {u} misses the all-1 word"),
        )?;
    }
    for u in words(4) {
        ensure(
            checks::zero_tail_settles(&u, 10_000, 100).is_some(),
            format!("cell 1 never settles to 1 from {u}"),
        )?;
    }
    for u in words(3) {
        let times = checks::two_tail_returns(&u, 0, 10_000, 5);
        ensure(
            times.len() == 5,
            format!("only {} returns of 2 at cell 1 from {u}", times.len()),
        )?;
    }
    let mut rng = seeded(6);
    let shape = ConfigShape {
        alphabet: q3,
        max_period: 3,
        max_center: 12,
        max_offset: 8,
    };
    for _ in 0..50 {
        let x = random_config(&mut rng, shape);
        for n in 0..=6 {
            ensure(
                checks::frozen_two_window(&x, n, 20),
                format!("window test fails for {x}, n = {n}"),
            )?;
        }
    }
    Ok("rewriting, recurrence, sensitivity and window checks hold".into())
}

fn property_suites() -> Outcome {
    let budget = Budget::default();
    let mut rng = seeded(7);
    let cfg_shape = |a| ConfigShape {
        alphabet: q(a),
        max_period: 4,
        max_center: 10,
        max_offset: 10,
    };
    // exhaustive: every elementary rule, pointwise on [-50, 50] and composed twice
    let samples: Vec<EpConfig> = (0..8).map(|_| random_config(&mut rng, cfg_shape(2))).collect();
    for n in 0..=255u8 {
        let f = LocalRule::elementary(n);
        let spec = NuCaSpec::uniform(f.clone());
        let f2 = NuCaSpec::uniform(f.self_compose(2, &budget).map_err(e2s)?);
        for x in &samples {
            let y = step(&spec, x).map_err(e2s)?;
            for i in -50..=50 {
                ensure(
                    y.sample(i) == f.eval(&x.window(i - 1, i + 1)),
                    format!("rule {n} at cell {i} of {x}"),
                )?;
            }
            ensure(
                iterate(&spec, x, 2).unwrap().equals(&step(&f2, x).unwrap()),
                format!("rule {n} squared on {x}"),
            )?;
        }
    }
    // randomized: 1000 specs and configurations
    for t in 0..1000 {
        let spec = random_spec(
            &mut rng,
            SpecShape {
                alphabet: q(2 + t % 2),
                radius: 1 + t % 3 / 2,
                max_k: 2,
                max_period: 3,
            },
        );
        let shape = cfg_shape(spec.alphabet().size());
        let (x, y, z) = (
            random_config(&mut rng, shape),
            random_config(&mut rng, shape),
            random_config(&mut rng, shape),
        );
        let nx = x.normalize();
        ensure(nx == nx.normalize() && nx.equals(&x), format!("normalize of {x}"))?;
        ensure(
            EpConfig::new(nx.left().clone(), nx.center().clone(), nx.offset(), nx.right().clone())
                .unwrap()
                .normalize()
                == nx,
            "normal form",
        )?;
        for i in -30..=30 {
            ensure(nx.sample(i) == x.sample(i), format!("normalize moved cell {i} of {x}"))?;
        }
        let (dxy, dyz, dxz) = (
            x.distance_exponent(&y),
            y.distance_exponent(&z),
            x.distance_exponent(&z),
        );
        ensure(dxy == y.distance_exponent(&x), "metric symmetry")?;
        ensure(x.distance_exponent(&x) == Distance::Equal, "metric identity")?;
        ensure(
            dxz.value() <= dxy.value().max(dyz.value()),
            format!("ultrametric {x} {y} {z}"),
        )?;
        let img = step(&spec, &x).map_err(e2s)?;
        let r = spec.radius() as i64;
        for i in -50..=50 {
            ensure(
                img.sample(i) == spec.eval_at(i, &x.window(i - r, i + r)),
                format!("cell {i} of {x} under {spec}"),
            )?;
        }
        ensure(
            step(&spec, &x.translate(0)).unwrap().equals(&img),
            "translation by zero",
        )?;
    }
    Ok("256 elementary rules exhaustively, 1000 random cases, 0 failures".into())
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("[1/7] decider verdict table", verdict_table, 10),
        ("[2/7] oracle agreement", oracle_agreement, 120),
        ("[3/7] structural implications", structural_implications, 60),
        ("[4/7] conjugacy and embedding", conjugacy_and_embedding, 30),
        ("[5/7] dynamics certificates", dynamics_certificates, 60),
        ("[6/7] zoo checks", zoo_checks, 300),
        ("[7/7] property suites", property_suites, 600),
    ];
    let mut failed = 0;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let late = elapsed > Duration::from_secs(limit);
        match (&outcome, late) {
            (Ok(detail), false) => println!("PASS {name} ({:.1}s): {detail}", elapsed.as_secs_f64()),
            (Ok(detail), true) => {
                failed += 1;
                println!("FAIL {name} ({:.1}s > {limit}s): {detail}", elapsed.as_secs_f64());
            }
            (Err(why), _) => {
                failed += 1;
                println!("FAIL {name} ({:.1}s): {why}", elapsed.as_secs_f64());
            }
        }
    }
    println!("{} of 7 criteria passed", 7 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
