use super::{Check, CheckOptions, Tally, Verdict};
use crate::arithdata::{
    check_admissible, check_hyp, generate_a_s, mu_tate_annihilators, Fixture, SetVerdict,
};
use crate::center::{CentralElement, MaxOrderMode};
use crate::engine::{
    omega_l, sku_prime_generators, theta, theta_with_inertia_norms, Theta, ThetaElement,
};
use crate::error::Result;
use crate::rednorm::fitting::{annihilation_check, FittingInvariant};
use crate::rednorm::hset::{certified_h, i_membership, validate_candidate, IMembership};

/// Admissibility for one prime p, or for all primes at once when p is absent (Hyp(S,T) at r = 0).
pub fn integral_sets(
    fix: &Fixture,
    s: &[usize],
    t: &[usize],
    p: Option<u64>,
    r: i64,
) -> Result<SetVerdict> {
    match (p, r) {
        (Some(p), _) => check_admissible(fix, s, t, p, r),
        (None, 0) => check_hyp(fix, s, t),
        (None, _) => check_admissible(fix, s, t, 2, r),
    }
}

fn describe(fix: &Fixture, s: &[usize], t: &[usize], r: i64) -> String {
    format!(
        "S = {{{}}}, T = {{{}}}, r = {r}",
        fix.place_labels(s).join(", "),
        fix.place_labels(t).join(", ")
    )
}

/// Infinite and ramified places.
pub fn default_s(fix: &Fixture) -> Vec<usize> {
    let mut s: Vec<usize> = fix
        .infinite_places()
        .into_iter()
        .chain(fix.ramified_places())
        .collect();
    s.sort();
    s.dedup();
    s
}

fn chosen_s(fix: &Fixture, opts: &CheckOptions) -> Vec<usize> {
    opts.sets
        .as_ref()
        .map(|c| c.s.clone())
        .unwrap_or_else(|| default_s(fix))
}

fn chosen_sets(fix: &Fixture, opts: &CheckOptions) -> Vec<(Vec<usize>, Vec<usize>, i64)> {
    match &opts.sets {
        Some(c) => vec![(c.s.clone(), c.t.clone(), c.r)],
        None => fix
            .sets
            .iter()
            .map(|x| (x.s.clone(), x.t.clone(), x.r))
            .collect(),
    }
}

fn record_sources(tally: &mut Tally, th: &ThetaElement) {
    for src in &th.sources {
        tally.provenance(format!(
            "{} source on {{{}}}: {}",
            src.kind,
            src.subgroup.join(", "),
            src.provenance
        ));
        if src.fixture_supplied {
            tally.note("uses fixture-supplied L-values: only Galois equivariance and parity vanishing are checked, not their analytic correctness");
        }
    }
}

fn assemble(
    tally: &mut Tally,
    fix: &Fixture,
    s: &[usize],
    t: &[usize],
    r: i64,
) -> Result<Option<ThetaElement>> {
    match theta(fix, s, t, r)? {
        Theta::Assembled(th) => {
            record_sources(tally, &th);
            Ok(Some(th))
        }
        Theta::Incomplete(missing) => {
            let list: Vec<String> = missing.iter().map(|m| m.describe()).collect();
            tally.inconclusive(format!(
                "{}: missing sources (fixture field sources): {}",
                describe(fix, s, t, r),
                list.join("; ")
            ));
            Ok(None)
        }
    }
}

fn ring_integrality(tally: &mut Tally, fix: &Fixture, context: &str, x: &CentralElement) -> bool {
    match x.to_group_ring().non_integral_witness() {
        Some((g, c)) => {
            tally.fail(
                context,
                None,
                format!("group-ring coefficient at {}: {c}", fix.group.label(g)),
            );
            false
        }
        None => true,
    }
}

/// θ_S^T(r) ∈ ζ(𝓜_p(H))[C] on every admissible set.
pub fn check_theorem_stickelberger_int(fix: &Fixture, opts: &CheckOptions) -> Result<Verdict> {
    let mut tally = Tally::new(Check::StickelbergerInt, fix, opts);
    let mode = match opts.p {
        Some(p) => format!("product decomposition, {p}-local"),
        None => "product decomposition, all primes".to_string(),
    };
    tally.note(format!("membership tested in {mode}"));
    let mut tested = 0;
    for (s, t, r) in chosen_sets(fix, opts) {
        let ctx = describe(fix, &s, &t, r);
        let adm = integral_sets(fix, &s, &t, opts.p, r)?;
        if !adm.holds {
            tally.note(format!(
                "skipped {ctx}: not admissible ({})",
                adm.failed().join(", ")
            ));
            continue;
        }
        tested += 1;
        let Some(th) = assemble(&mut tally, fix, &s, &t, r)? else {
            continue;
        };
        let x = tally.input(th.element)?;
        match x.max_order_membership(MaxOrderMode::Product, opts.p)? {
            Some(w) => tally.fail_membership(ctx, w),
            None => tally.confirm(ctx, "integral in every component"),
        }
    }
    if tested == 0 {
        tally.inconclusive("no admissible set among the fixture field sets");
    }
    Ok(tally.finish())
}

/// SKu′ ⊂ ζ(𝓜(G)) and ∏_{𝔭∈J} nr(N_I)·θ_{S∖J}^T(r) ∈ ζ(𝓜(G)) (ℤG when G is abelian) for J ⊆ S_ram.
pub fn check_theorem_sku_maxord(fix: &Fixture, opts: &CheckOptions) -> Result<Verdict> {
    let mut tally = Tally::new(Check::SkuMaxord, fix, opts);
    let s = chosen_s(fix, opts);
    let sku = sku_prime_generators(fix, &s, opts.bound)?;
    for t in &sku.truncation {
        tally.note(format!("SKu' generators: {t}"));
    }
    for w in &sku.warnings {
        tally.note(w.clone());
    }
    for src in &sku.sources {
        tally.provenance(format!(
            "{} source on {{{}}}: {}",
            src.kind,
            src.subgroup.join(", "),
            src.provenance
        ));
    }
    let s_ctx = format!("S = {{{}}}", fix.place_labels(&s).join(", "));
    if !sku.missing.is_empty() {
        let list: Vec<String> = sku.missing.iter().map(|m| m.describe()).collect();
        tally.inconclusive(format!(
            "L(0) needs missing sources (fixture field sources): {}",
            list.join("; ")
        ));
    } else if sku.generators.is_empty() {
        tally.inconclusive(format!(
            "{s_ctx}: no T with |T| <= {} (--bound) satisfies Hyp(S,T)",
            opts.bound
        ));
    }
    let mut passed = 0;
    for g in &sku.generators {
        let x = tally.input(g.element.clone())?;
        let ctx = format!(
            "{s_ctx}, SKu' generator T = {{{}}}",
            fix.place_labels(&g.t).join(", ")
        );
        match x.max_order_membership(MaxOrderMode::Full, None)? {
            Some(w) => tally.fail_membership(ctx, w),
            None => passed += 1,
        }
    }
    if passed > 0 {
        tally.confirm(
            s_ctx,
            format!("{passed} SKu' generators in the maximal order"),
        );
    }
    let abelian = fix.group.is_abelian();
    for (s, t, r) in chosen_sets(fix, opts) {
        let ctx = describe(fix, &s, &t, r);
        let adm = integral_sets(fix, &s, &t, None, r)?;
        if !adm.holds {
            tally.note(format!(
                "inertia-norm sweep skipped {ctx}: not admissible ({})",
                adm.failed().join(", ")
            ));
            continue;
        }
        let ram: Vec<usize> = fix
            .ramified_places()
            .into_iter()
            .filter(|i| s.contains(i))
            .collect();
        let mut ok = 0;
        for mask in 0..(1u64 << ram.len()) {
            let j: Vec<usize> = (0..ram.len())
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| ram[b])
                .collect();
            let jctx = format!("{ctx}, J = {{{}}}", fix.place_labels(&j).join(", "));
            let x = match theta_with_inertia_norms(fix, &j, &s, &t, r)? {
                Ok(x) => x,
                Err(missing) => {
                    let list: Vec<String> = missing.iter().map(|m| m.describe()).collect();
                    tally.inconclusive(format!(
                        "{jctx}: missing sources (fixture field sources): {}",
                        list.join("; ")
                    ));
                    continue;
                }
            };
            record_sources(&mut tally, &x.theta);
            let y = tally.input(x.element)?;
            if let Some(w) = y.max_order_membership(MaxOrderMode::Full, None)? {
                tally.fail_membership(jctx, w);
                continue;
            }
            if abelian && !ring_integrality(&mut tally, fix, &jctx, &y) {
                continue;
            }
            ok += 1;
        }
        if ok > 0 {
            let target = if abelian { "ZG" } else { "the maximal order" };
            tally.confirm(ctx, format!("{ok} choices of J give elements of {target}"));
        }
    }
    Ok(tally.finish())
}

fn class_modules<'a>(
    tally: &mut Tally,
    fix: &'a Fixture,
) -> Vec<&'a crate::arithdata::fixture::ClassGroup> {
    let mut out = Vec::new();
    for cg in &fix.class_groups {
        if cg.t.is_empty() {
            tally.provenance(format!("class group: {}", cg.provenance));
            out.push(cg);
        } else {
            tally.note(format!(
                "ray class group for T = {{{}}} not used",
                fix.place_labels(&cg.t).join(", ")
            ));
        }
    }
    if out.is_empty() {
        tally.inconclusive("fixture field classGroups has no entry with setT = []");
    }
    out
}

fn i_verdict(
    tally: &mut Tally,
    fix: &Fixture,
    ctx: &str,
    x: &CentralElement,
    budget: usize,
) -> Result<()> {
    match i_membership(&fix.real, x, budget)? {
        IMembership::Falsified(w) => tally.fail_membership(ctx, w),
        IMembership::Certified(how) => tally.confirm(ctx, format!("in I(G): {how}")),
        IMembership::NecessaryPass => {
            tally.confirm(ctx, "in the maximal order");
            tally.note(format!(
                "I(G) membership only in the necessary sense: no reduced-norm certificate within {budget} trials (b <= 2, height <= 1)"
            ));
        }
    }
    Ok(())
}

fn annihilate(
    tally: &mut Tally,
    ctx: &str,
    x: &CentralElement,
    modules: &[&crate::arithdata::fixture::ClassGroup],
    hs: &[(String, crate::center::GroupRingElement)],
) -> Result<()> {
    let fitt = FittingInvariant {
        generators: vec![x.clone()],
        row_sets: Vec::new(),
        equivalence_tag: "Stickelberger multiple",
    };
    let h_elems: Vec<_> = hs.iter().map(|(_, h)| h.clone()).collect();
    for cg in modules {
        if cg.module.is_zero() {
            tally.confirm(
                format!("{ctx}, trivial class group"),
                "annihilation is vacuous",
            );
            continue;
        }
        match annihilation_check(&fitt, &cg.module, &h_elems) {
            Ok(v) if v.is_empty() => tally.confirm(
                format!("{ctx}, class group {:?}", cg.module.factors()),
                "annihilated",
            ),
            Ok(v) => {
                for bad in v {
                    tally.fail(
                        format!(
                            "{ctx}, h = {}, class basis vector {}",
                            hs[bad.h_index].0, bad.basis_vector
                        ),
                        None,
                        format!("image {:?}", bad.image),
                    );
                }
            }
            Err(e) => tally.fail(
                format!("{ctx}, class group {:?}", cg.module.factors()),
                None,
                e.to_string(),
            ),
        }
    }
    Ok(())
}

/// x·𝔄_S·θ_S(0) annihilates the class group for certified x ∈ 𝓗(G); 𝔄_S·θ_S(0) ⊂ 𝓘(G) three-valued.
pub fn check_brumer(fix: &Fixture, opts: &CheckOptions) -> Result<Verdict> {
    let mut tally = Tally::new(Check::Brumer, fix, opts);
    let s = chosen_s(fix, opts);
    let modules = class_modules(&mut tally, fix);
    let Some(th) = assemble(&mut tally, fix, &s, &[], 0)? else {
        return Ok(tally.finish());
    };
    let th = tally.input(th.element)?;
    let a_s = generate_a_s(fix, &s, opts.bound)?;
    tally.note(format!("A_S generators: {}", a_s.tag()));
    for w in &a_s.warnings {
        tally.note(w.clone());
    }
    if a_s.generators.is_empty() {
        tally.inconclusive(format!(
            "no T with |T| <= {} (--bound) satisfies Hyp(S,T) in the fixture field tPool",
            opts.bound
        ));
    }
    let hs: Vec<_> = certified_h(&fix.real)
        .into_iter()
        .map(|h| (h.note.clone(), h.element))
        .collect();
    tally.note(format!(
        "certified H(G) elements: {}",
        hs.iter()
            .map(|h| h.0.as_str())
            .collect::<Vec<_>>()
            .join(", ")
    ));
    let mut assumed = Vec::new();
    for (i, cand) in fix.h_candidates.iter().enumerate() {
        match validate_candidate(
            &fix.real,
            cand,
            opts.h_trials,
            opts.seed.wrapping_add(i as u64),
        )? {
            Ok(h) => assumed.push((
                format!("hCandidates[{i}] (assumed-H, {})", h.note),
                h.element,
            )),
            Err(_) => tally.note(format!(
                "hCandidates[{i}] is not in H(G): a random star adjoint stays non-integral"
            )),
        }
    }
    for a in &a_s.generators {
        let x = a.element.mul(&th)?;
        let ctx = format!(
            "{}, a = delta_T(0) for T = {{{}}}",
            describe(fix, &s, &[], 0),
            fix.place_labels(&a.t).join(", ")
        );
        i_verdict(&mut tally, fix, &ctx, &x, opts.i_budget)?;
        annihilate(&mut tally, &ctx, &x, &modules, &hs)?;
        for (label, h) in &assumed {
            let fitt = FittingInvariant {
                generators: vec![x.clone()],
                row_sets: Vec::new(),
                equivalence_tag: "Stickelberger multiple",
            };
            for cg in &modules {
                let ok = annihilation_check(&fitt, &cg.module, std::slice::from_ref(h))
                    .map(|v| v.is_empty())
                    .unwrap_or(false);
                tally.note(format!(
                    "{ctx}: {label} {} the class group (not used for the verdict)",
                    if ok {
                        "annihilates"
                    } else {
                        "fails to annihilate"
                    }
                ));
            }
        }
    }
    Ok(tally.finish())
}

/// ω_L·θ_S(0) ∈ 𝓘(G) (three-valued) and ω_L·θ_S(0) kills every class.
pub fn check_brumer_stark_necessary(fix: &Fixture, opts: &CheckOptions) -> Result<Verdict> {
    let mut tally = Tally::new(Check::BrumerStark, fix, opts);
    tally.note("the anti-unit construction and the congruence condition on alpha_T are not checked; only the ideal-class shadow is");
    let s = chosen_s(fix, opts);
    let modules = class_modules(&mut tally, fix);
    let Some(th) = assemble(&mut tally, fix, &s, &[], 0)? else {
        return Ok(tally.finish());
    };
    let th = tally.input(th.element)?;
    let w = fix.mu.w;
    let x = omega_l(fix).mul(&th)?;
    let ctx = format!("{}, omega_L = {w}", describe(fix, &s, &[], 0));
    i_verdict(&mut tally, fix, &ctx, &x, opts.i_budget)?;
    let one = vec![(
        "1".to_string(),
        crate::center::GroupRingElement::one(&fix.group),
    )];
    annihilate(&mut tally, &ctx, &x, &modules, &one)?;
    Ok(tally.finish())
}

/// nr(x)·θ_S(r) integral for x in the annihilator of μ_{1−r}(L); ℤG-membership when G is abelian.
pub fn check_negative_r(fix: &Fixture, opts: &CheckOptions) -> Result<Verdict> {
    let mut tally = Tally::new(Check::NegativeR, fix, opts);
    let mut cases: Vec<(Vec<usize>, i64)> = Vec::new();
    for (s, _, r) in chosen_sets(fix, opts) {
        if r < 0 && !cases.contains(&(s.clone(), r)) {
            cases.push((s, r));
        }
    }
    if cases.is_empty() {
        tally.inconclusive("no set with r < 0 in the fixture field sets");
    }
    let needed: Vec<usize> = default_s(fix);
    for (s, r) in cases {
        let ctx = describe(fix, &s, &[], r);
        if let Some(&i) = needed.iter().find(|i| !s.contains(i)) {
            tally.note(format!("skipped {ctx}: S misses {}", fix.places[i].label));
            continue;
        }
        let n = 1 - r;
        if !fix.twists.iter().any(|d| d.n as i64 == n) {
            tally.inconclusive(format!(
                "{ctx}: fixture field twistedRootsOfUnity has no entry with twist = {n}"
            ));
            continue;
        }
        let ann = mu_tate_annihilators(fix, r)?;
        tally.provenance(format!("mu_{n}(L) of order {}: {}", ann.w, ann.provenance));
        for pe in &ann.frobenius_elements {
            tally.note(format!(
                "1 - phi N^(r-1) at {} for r = {r} {} mu_{n}(L)",
                pe.place,
                if pe.annihilates {
                    "annihilates"
                } else {
                    "does not annihilate"
                }
            ));
        }
        let Some(th) = assemble(&mut tally, fix, &s, &[], r)? else {
            continue;
        };
        let th = tally.input(th.element)?;
        let mut ok = 0;
        for (k, x) in ann.generators.iter().enumerate() {
            let y = fix.real.reduced_norm_element(x)?.mul(&th)?;
            let gctx = format!("{ctx}, annihilator generator {k}");
            if let Some(w) = y.max_order_witness(None) {
                tally.fail_membership(gctx, w);
                continue;
            }
            if fix.group.is_abelian() && !ring_integrality(&mut tally, fix, &gctx, &y) {
                continue;
            }
            ok += 1;
        }
        if ok > 0 {
            let zero = th.is_zero();
            tally.confirm(
                ctx,
                format!(
                    "{ok} of {} annihilator generators give integral multiples (w_{n} = {}){}",
                    ann.generators.len(),
                    ann.w,
                    if zero { ", theta vanishes" } else { "" }
                ),
            );
        }
    }
    Ok(tally.finish())
}
