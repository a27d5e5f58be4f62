//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the per-criterion lines always print; exits non-zero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use infsum_core::extreal::{
    Biproduct, DyadicExt, Dyadics, ExtNat, ExtNats, FiniteLattice, FreeSeriesElem, FreeSeriesMonoid, LowerReals,
};
use infsum_core::intsets::{
    int_compose, int_identity, int_tensor, sample_object, sample_triple, snakes, trace_injection, Injection,
    IntMorphism, IntObject, Mode,
};
use infsum_core::magnitude::{
    binary_expand, extnat_endo, extreal_mul, extreal_mul_lower, formal_normalize, formal_value, zeno_suite_extnat,
    zeno_suite_extreal, zeno_suite_lattice, zeno_verify, FormalMagnitude,
};
use infsum_core::paradoxical::{sample_zp, zp_add, ZPElem};
use infsum_core::rig::{geometric_inverse, omega_assoc_check, p_finite, p_sum, sample_order_preserving, PMonoid, Rig};
use infsum_core::series::harness::{case_rng, run_suite, sample_extnat, sample_lower_real, HarnessConfig, Sample, Suite};
use infsum_core::series::{binary_add, ApproxLevel, SeriesMonoid, Verdict, DEFAULT_BUDGET};
use num_bigint::BigUint;
use rand::{Rng, RngCore};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn config(seed: u64, cases: usize, bits: u32) -> HarnessConfig {
    HarnessConfig { seed, cases, level: ApproxLevel(bits) }
}

fn laws_on<M: Sample>(inst: &M, seed: u64) -> Result<usize, String> {
    let report = run_suite(inst, Suite::Laws, config(seed, 1000, 32));
    ensure(report.all_passed() && report.pass == 1000, || format!("{report}"))?;
    Ok(report.pass)
}

fn series_laws() -> Outcome {
    let start = Instant::now();
    let mut total = 0;
    total += laws_on(&ExtNats, 1)?;
    total += laws_on(&LowerReals, 2)?;
    total += laws_on(&FiniteLattice::boolean(), 3)?;
    total += laws_on(&FiniteLattice::chain("chain3", 3), 4)?;
    total += laws_on(&Biproduct::new(vec![ExtNats, ExtNats]), 5)?;
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1}s"))?;
    Ok(format!("{total} cases over 5 instances in {secs:.1}s"))
}

fn biproduct_equations() -> Outcome {
    for case in 0..500 {
        let mut rng = case_rng(20, case);
        let n = rng.gen_range(1..=4);
        let b = Biproduct::new(vec![ExtNats; n]);
        let (k, m) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let a = sample_extnat(&mut rng);
        let got = b.project(k, &b.inject(m, a));
        let want = if k == m { a } else { ExtNat::ZERO };
        ensure(got == want, || format!("case {case}: pr_{k} in_{m} {a} = {got}"))?;
        let x: Vec<ExtNat> = (0..n).map(|_| sample_extnat(&mut rng)).collect();
        ensure(b.reassemble(&x) == x, || format!("case {case}: sum in_k pr_k {x:?} = {:?}", b.reassemble(&x)))?;
    }
    Ok("500 cases".into())
}

fn zeno() -> Outcome {
    let report = zeno_suite_extreal(config(7, 200, 40));
    ensure(report.all_passed() && report.pass == 200, || format!("{report}"))?;
    let lattices =
        [FiniteLattice::boolean(), FiniteLattice::chain("chain3", 3), FiniteLattice::powerset("subsets2", 2)];
    for l in &lattices {
        let report = zeno_suite_lattice(l, config(8, 50, 40));
        ensure(report.all_passed(), || format!("{report}"))?;
    }
    let report = zeno_suite_extnat(config(9, 100, 32));
    ensure(report.expected_negative.is_some() && report.fail == 100, || format!("{report}"))?;
    // every candidate n ↦ n·c, not just sampled ones
    for c in (0..=100).map(ExtNat::Fin).chain([ExtNat::Inf]) {
        let out = zeno_verify(&ExtNats, &extnat_endo(c), &[ExtNat::ONE], ApproxLevel(32));
        ensure(!out.is_pass(), || format!("n ↦ n·{c} passed at a = 1"))?;
    }
    Ok("halving 200/200 at 40 bits; identity on 3 lattices; no ExtNat candidate survives a = 1".into())
}

fn random_code(rng: &mut dyn RngCore) -> FormalMagnitude {
    let support = rng.gen_range(0..=8);
    let mut x = FormalMagnitude::from_coeffs(
        (0..support).map(|_| (rng.gen_range(0..8u32), ExtNat::Fin(rng.gen_range(0..=8)))),
    );
    if rng.gen_ratio(1, 5) {
        x = x.add(&FormalMagnitude::tail(rng.gen_range(0..8)));
    }
    x
}

/// Applies the defining relations at random, so the result stays congruent.
fn rewrite(rng: &mut dyn RngCore, x: &FormalMagnitude) -> FormalMagnitude {
    let mut coeffs: Vec<(u32, ExtNat)> = x.coeffs().collect();
    let mut tails: Vec<u32> = x.ones_tail().into_iter().collect();
    for _ in 0..rng.gen_range(1..=4) {
        let live: Vec<usize> = (0..coeffs.len()).filter(|&i| coeffs[i].1 != ExtNat::ZERO).collect();
        if live.is_empty() {
            break;
        }
        let i = live[rng.gen_range(0..live.len())];
        let (n, c) = coeffs[i];
        coeffs[i].1 = ExtNat::Fin(c.finite().expect("finite") - 1);
        if rng.gen_bool(0.5) || !tails.is_empty() {
            // χ_n = χ_(n+1) + χ_(n+1)
            coeffs.push((n + 1, ExtNat::Fin(2)));
        } else {
            // χ_n = χ_(n+1) + χ_(n+2) + ...
            tails.push(n + 1);
        }
    }
    let mut out = FormalMagnitude::from_coeffs(coeffs);
    for t in tails {
        out = out.add(&FormalMagnitude::tail(t));
    }
    out
}

fn formal_module() -> Outcome {
    let mut congruent = 0;
    for case in 0..1000 {
        let mut rng = case_rng(40, case);
        let x = random_code(&mut rng);
        let y = if rng.gen_bool(0.5) { rewrite(&mut rng, &x) } else { random_code(&mut rng) };
        let by_normal_form = formal_normalize(&x) == formal_normalize(&y);
        let by_value = formal_value(&x) == formal_value(&y);
        ensure(by_normal_form == by_value, || format!("case {case}: {x} vs {y}"))?;
        congruent += by_value as usize;
    }
    let chi0 = FormalMagnitude::chi(0);
    let doubled = FormalMagnitude::chi(1).add(&FormalMagnitude::chi(1));
    ensure(formal_normalize(&doubled) == chi0, || format!("2χ_1 normalizes to {}", formal_normalize(&doubled)))?;
    ensure(formal_normalize(&FormalMagnitude::tail(1)) == chi0, || "tail from χ_1".into())?;
    ensure(formal_normalize(&FormalMagnitude::chi(1).add(&FormalMagnitude::tail(2))) == chi0, || {
        "χ_1 plus tail from χ_2".into()
    })?;
    Ok(format!("1000 pairs ({congruent} congruent); χ_1 doubling and tails give χ_0"))
}

fn expansions() -> Outcome {
    for e in 0..=10u32 {
        for m in 0..1024u32 {
            let x = DyadicExt::new(m, e);
            for nonterminating in [false, true] {
                let got = DyadicExt::Fin(binary_expand(&x, nonterminating).map_err(|err| err.to_string())?.value());
                ensure(got == x, || format!("{x} (nonterminating: {nonterminating}) came back as {got}"))?;
            }
        }
    }
    let one = binary_expand(&DyadicExt::one(), true).map_err(|e| e.to_string())?;
    ensure(!one.is_terminating(), || "1 stayed terminating".into())?;
    let bound = one.series_value().certified(ApproxLevel(48)).ok_or("no modulus")?;
    let floor = DyadicExt::one().checked_sub(&DyadicExt::new(1u32, 48)).expect("positive");
    ensure(floor <= bound && bound <= DyadicExt::one(), || format!("0.111… at 48 bits is {bound}"))?;
    Ok("11264 dyadics both ways; 0.111… within 2^-48 of 1".into())
}

fn multiplication() -> Outcome {
    let values: Vec<(u64, u32)> = (0..=8).flat_map(|e| (0..256).map(move |m| (m, e))).collect();
    let dyadics: Vec<DyadicExt> = values.iter().map(|&(m, e)| DyadicExt::new(m, e)).collect();
    for (i, &(m1, e1)) in values.iter().enumerate() {
        for (j, &(m2, e2)) in values.iter().enumerate() {
            let prod = extreal_mul(&dyadics[i], &dyadics[j]);
            let (p, q) = prod.finite().ok_or("finite product came out infinite")?.to_ratio_parts();
            // p/q = m1 m2 / 2^(e1+e2), cross-multiplied
            let lhs = p << (e1 + e2) as usize;
            let rhs = BigUint::from(m1 * m2) * q;
            ensure(lhs == rhs, || format!("{m1}/2^{e1} · {m2}/2^{e2} = {prod}"))?;
        }
    }
    let (zero, inf) = (DyadicExt::zero(), DyadicExt::Inf);
    ensure(extreal_mul(&zero, &inf) == zero && extreal_mul(&inf, &zero) == zero, || "0·inf".into())?;
    let level = ApproxLevel(40);
    let mut unknown = 0;
    for case in 0..500 {
        let mut rng = case_rng(60, case);
        let [a, b, c] = [(); 3].map(|_| sample_lower_real(&mut rng));
        let assoc = extreal_mul_lower(&extreal_mul_lower(&a, &b), &c)
            .eq_at(&extreal_mul_lower(&a, &extreal_mul_lower(&b, &c)), level);
        let comm = extreal_mul_lower(&a, &b).eq_at(&extreal_mul_lower(&b, &a), level);
        for v in [assoc, comm] {
            ensure(v != Verdict::Unequal, || format!("case {case}: {a:?} {b:?} {c:?}"))?;
            unknown += (v == Verdict::Unknown) as usize;
        }
    }
    ensure(unknown == 0, || format!("{unknown} comparisons undecided at 40 bits"))?;
    Ok(format!("{} pairs exact; 0·inf = 0; 500 lower-real triples at 40 bits", values.len() * values.len()))
}

/// Sum over nonempty subsets of the product of the members.
fn brute_p<R: Rig>(rig: &R, values: &[R::Elem]) -> R::Elem {
    let n = values.len();
    let mut total = rig.zero();
    for mask in 1u32..(1 << n) {
        let mut prod: Option<R::Elem> = None;
        for (i, v) in values.iter().enumerate() {
            if mask & (1 << i) != 0 {
                prod = Some(match prod {
                    None => v.clone(),
                    Some(p) => rig.mul(&p, v),
                });
            }
        }
        total = binary_add(rig, &total, &prod.expect("nonempty"));
    }
    total
}

fn p_against_oracle<R: Rig>(rig: &R, values: &[R::Elem]) -> Result<(), String>
where
    R::Elem: PartialEq,
{
    let want = brute_p(rig, values);
    let by_recurrence = p_finite(rig, values);
    let by_family = p_sum(rig, &rig.family(values.to_vec()), DEFAULT_BUDGET);
    ensure(by_recurrence == want && by_family.complete && by_family.value == want, || {
        format!("{values:?}: recurrence {by_recurrence:?}, series {:?}, subsets {want:?}", by_family.value)
    })
}

fn p_operation() -> Outcome {
    for case in 0..500 {
        let mut rng = case_rng(70, case);
        let len = rng.gen_range(0..=10);
        let nats: Vec<ExtNat> = (0..len)
            .map(|_| if rng.gen_ratio(1, 25) { ExtNat::Inf } else { ExtNat::Fin(rng.gen_range(0..=4)) })
            .collect();
        p_against_oracle(&ExtNats, &nats)?;
        let dyads: Vec<DyadicExt> = (0..len).map(|_| DyadicExt::new(rng.gen_range(0..16u32), rng.gen_range(0..=4))).collect();
        p_against_oracle(&Dyadics, &dyads)?;
        let (a0, a1) = (dyads.first().cloned().unwrap_or_else(DyadicExt::zero), DyadicExt::new(rng.gen_range(0..64u32), 3));
        let want = a0.add(&a1).add(&a0.mul(&a1));
        let got = p_sum(&Dyadics, &Dyadics.family(vec![a0, a1]), DEFAULT_BUDGET);
        ensure(got.value == want, || format!("P(a0, a1) = {} against {want}", got.value))?;
    }
    Ok("500 families over N and dyadics against subset enumeration".into())
}

fn geometric() -> Outcome {
    let level = ApproxLevel(40);
    let one = DyadicExt::one();
    let floor = one.checked_sub(&DyadicExt::new(1u32, 40)).expect("positive");
    for case in 0..200 {
        let mut rng = case_rng(80, case);
        let e = rng.gen_range(0..=10u32);
        let a = DyadicExt::new(rng.gen_range(1..=1u64 << e), e);
        let v = geometric_inverse(&a).map_err(|err| format!("{a}: {err}"))?;
        let bound = v.certified(level).ok_or_else(|| format!("{a}: no modulus"))?;
        let prod = a.mul(&bound);
        ensure(floor <= prod && prod <= one, || format!("{a} · v = {prod} at 40 bits"))?;
    }
    Ok("200 seeded a in (0, 1]".into())
}

fn paradoxical() -> Outcome {
    let zp = |s: &str| s.parse::<ZPElem>().map_err(|e| e.to_string());
    ensure(zp_add(&zp("r:0.(1)")?, &zp("r:0.(1)")?) == zp("r:1.(1)")?, || "0.11… + 0.11…".into())?;
    ensure(zp_add(&zp("t:1")?, &zp("t:1")?) == zp("t:10")?, || "1.00… + 1.00…".into())?;
    for case in 0..2000 {
        let mut rng = case_rng(90, case);
        let [a, b, c] = [(); 3].map(|_| sample_zp(&mut rng));
        ensure(zp_add(&zp_add(&a, &b), &c) == zp_add(&a, &zp_add(&b, &c)), || format!("assoc on {a} {b} {c}"))?;
        ensure(zp_add(&a, &b) == zp_add(&b, &a), || format!("comm on {a} {b}"))?;
        ensure(zp_add(&a, &b).value() == a.value() + b.value(), || format!("value of {a} + {b}"))?;
    }
    ensure(ZPElem::Zero.value() == num_rational::Ratio::from_integer(BigUint::from(0u32)), || "value of 0".into())?;
    Ok("both displayed sums; 2000 triples; value is a morphism".into())
}

fn integer_sets() -> Outcome {
    for case in 0..500 {
        let mut rng = case_rng(100, case);
        for mode in [Mode::FB, Mode::FI] {
            let [f, g, h] = sample_triple(&mut rng, 4, mode);
            let compose = |b: &IntMorphism, a: &IntMorphism| int_compose(b, a).map_err(|e| e.to_string());
            ensure(compose(&h, &compose(&g, &f)?)? == compose(&compose(&h, &g)?, &f)?, || {
                format!("case {case}: associativity on {f}, {g}, {h}")
            })?;
            ensure(compose(&f, &int_identity(f.dom(), mode))? == f, || format!("case {case}: right identity {f}"))?;
            ensure(compose(&int_identity(f.cod(), mode), &f)? == f, || format!("case {case}: left identity {f}"))?;
            let (dom, cod) = (f.dom().cardinality(), f.cod().cardinality());
            match mode {
                Mode::FB => ensure(dom == cod, || format!("bijection {f} changes cardinality"))?,
                Mode::FI => ensure(dom <= cod, || format!("injection {f} lowers cardinality"))?,
            }
        }
        let (a, b) = (sample_object(&mut rng, 4), sample_object(&mut rng, 4));
        ensure(a.tensor(&b).cardinality() == a.cardinality() + b.cardinality(), || format!("{a} ⊗ {b}"))?;
    }
    let mut traced = 0;
    for n in 0..=4 {
        for u in 0..=n.min(2) {
            for f in Injection::all(n, n) {
                let t = trace_injection(&f, u).map_err(|e| e.to_string())?;
                ensure(t.is_bijective(), || format!("trace over {u} of {:?}", f.table()))?;
                traced += 1;
            }
        }
    }
    for x in 0..=4 {
        for u in 0..=4 {
            let obj = IntObject::new(x, u);
            let (first, second) = snakes(obj).map_err(|e| e.to_string())?;
            ensure(first == int_identity(obj, Mode::FB), || format!("snake on {obj} is {first}"))?;
            ensure(second == int_identity(obj.dual(), Mode::FB), || format!("dual snake on {obj} is {second}"))?;
            for y in 0..=4 {
                for v in 0..=4 {
                    let other = IntObject::new(y, v);
                    let sum = obj.tensor(&other).cardinality();
                    ensure(sum == obj.cardinality() + other.cardinality(), || format!("{obj} ⊗ {other}"))?;
                    let id = int_tensor(&int_identity(obj, Mode::FB), &int_identity(other, Mode::FB));
                    ensure(id == int_identity(obj.tensor(&other), Mode::FB), || format!("id ⊗ id on {obj}, {other}"))?;
                }
            }
        }
    }
    Ok(format!("500 triples in both modes; {traced} traced bijections; snakes on 25 objects"))
}

fn omega_assoc() -> Outcome {
    let level = ApproxLevel(32);
    let p_nat = PMonoid::new(ExtNats);
    for case in 0..500 {
        let mut rng = case_rng(110, case);
        let xi = sample_order_preserving(&mut rng);
        let fam = ExtNats.family(ExtNats.sample_family(&mut rng, 12));
        let out = omega_assoc_check(&ExtNats, &fam, &xi, level);
        ensure(out.is_pass(), || format!("case {case}: Σ on {fam:?} under {xi:?}: {out:?}"))?;
        let fam = p_nat.family(p_nat.sample_family(&mut rng, 8));
        let out = omega_assoc_check(&p_nat, &fam, &xi, level);
        ensure(out.is_pass(), || format!("case {case}: P on {fam:?} under {xi:?}: {out:?}"))?;
    }
    Ok("500 pairs each for Σ on ExtNat and P on N".into())
}

fn euler() -> Outcome {
    let nats: Vec<ExtNat> = (0..=100).map(ExtNat::Fin).chain([ExtNat::Inf]).collect();
    let free = FreeSeriesMonoid::<()>::default();
    let mut checked = 0;
    for &a in &nats {
        for &b in &nats {
            if binary_add(&ExtNats, &a, &b).is_zero() {
                ensure(a.is_zero() && b.is_zero(), || format!("{a} + {b} = 0"))?;
            }
            let (fa, fb) = (FreeSeriesElem::from_coeffs([((), a)]), FreeSeriesElem::from_coeffs([((), b)]));
            if free.is_zero(&binary_add(&free, &fa, &fb)) {
                ensure(fa.is_zero() && fb.is_zero(), || format!("{a}·x + {b}·x = 0"))?;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} pairs in each of ExtNat and the free monoid on one generator"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("series-monoid laws", series_laws),
        ("biproduct equations", biproduct_equations),
        ("zeno verification", zeno),
        ("free magnitude module", formal_module),
        ("binary expansion round trip", expansions),
        ("multiplication", multiplication),
        ("P operation", p_operation),
        ("geometric inverse", geometric),
        ("paradoxical reals", paradoxical),
        ("integer sets", integer_sets),
        ("omega general associativity", omega_assoc),
        ("euler obstruction", euler),
    ];
    let handles: Vec<_> = criteria
        .into_iter()
        .map(|(name, run)| (name, std::thread::spawn(run)))
        .collect();
    let mut failed = 0;
    for (i, (name, handle)) in handles.into_iter().enumerate() {
        let outcome = handle.join().unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({why})", i + 1);
            }
        }
    }
    println!("{} of 12 criteria passed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
