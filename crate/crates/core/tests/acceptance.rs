//! Acceptance suite: one PASS/FAIL line per criterion. All comparisons are exact.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Instant;

use ramify::algebra::{int, rat, Rational};
use ramify::curves::{self, CoverSpec};
use ramify::groups::{builtin_groups, irreducible_characters, ClassFunction, FiniteGroup};
use ramify::local_field::{build_artin_schreier, build_tame};
use ramify::ramification::{datum_from_extension, hasse_arf_check, quaternion_datum, RamificationDatum};
use ramify::swan;
use ramify::verify;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn as_params() -> Vec<(u32, i64)> {
    let mut v = Vec::new();
    for p in [2u32, 3, 5] {
        for m in 1..=4i64 {
            if m % p as i64 != 0 {
                v.push((p, m));
            }
        }
    }
    v
}

fn as_datum(p: u32, m: i64) -> RamificationDatum {
    datum_from_extension(&build_artin_schreier(p, 1, m, 1).unwrap()).unwrap()
}

/// Smallest prime `q` with `e | q - 1`.
fn tame_field(e: usize) -> u32 {
    (2u32..).find(|&q| ramify::algebra::finite_field::is_prime(q as u64) && (q as usize - 1).is_multiple_of(e)).unwrap()
}

fn tame_datum(e: usize) -> RamificationDatum {
    datum_from_extension(&build_tame(tame_field(e), e).unwrap()).unwrap()
}

fn criterion_1() -> Outcome {
    for (p, m) in as_params() {
        let d = as_datum(p, m);
        let sizes: Vec<usize> = d.lower_filtration().iter().map(|(_, s)| s.len()).collect();
        let mut expected = vec![p as usize; m as usize + 2];
        expected.push(1);
        ensure(sizes == expected, || format!("AS(p={p}, m={m}): |G_i| for i >= -1 = {sizes:?}"))?;
    }
    Ok(format!("{} Artin-Schreier extensions", as_params().len()))
}

fn criterion_2() -> Outcome {
    let mut points = 0;
    for (l, t) in [(2usize, 1i64), (2, 3), (3, 1), (3, 2), (5, 1), (5, 4), (7, 2)] {
        let g = Arc::new(FiniteGroup::cyclic(l));
        let i_g = g.elements().map(|x| (x != 0).then_some(t + 1)).collect();
        let d = RamificationDatum::from_i_values(g, i_g, 1, l as u32).unwrap();
        let (phi, psi) = (d.phi(), d.psi());
        let (lr, tr) = (int(l as i64), int(t));
        for k in 0..20 {
            let u = rat(-3 + k * 2, 3);
            let phi_expected = if u <= tr { u.clone() } else { &tr + (&u - &tr) / &lr };
            let psi_expected = if u <= tr { u.clone() } else { &lr * (&u - &tr) + &tr };
            ensure(phi.eval(&u) == Some(phi_expected.clone()), || format!("phi({u}) for l={l}, t={t}"))?;
            ensure(psi.eval(&u) == Some(psi_expected.clone()), || format!("psi({u}) for l={l}, t={t}"))?;
            points += 2;
        }
    }
    let mut rng = verify::rng_from_seed(2);
    for n in 0..500 {
        let d = verify::random_datum(&mut rng);
        ensure(verify::check_herbrand_functions(&d), || format!("random datum {n}: {:?}", d.i_values()))?;
    }
    Ok(format!("{points} closed-form evaluations, 500 random data"))
}

fn criterion_3() -> Outcome {
    let mut rng = verify::rng_from_seed(3);
    for n in 0..200 {
        let p = [2, 3, 5][n % 3];
        let d = verify::random_abelian_datum(&mut rng, p, 128, true);
        let rep = hasse_arf_check(&d).map_err(|e| format!("random abelian datum {n}: {e}"))?;
        ensure(rep.passed == Some(true), || format!("random abelian datum {n}"))?;
    }
    let q = quaternion_datum();
    let rep = hasse_arf_check(&q).map_err(|e| e.to_string())?;
    ensure(!rep.abelian && rep.passed.is_none(), || "quaternion reported as abelian".into())?;
    ensure(rep.jumps == vec![int(1), rat(3, 2)], || format!("quaternion jumps {:?}", rep.jumps))?;
    Ok("200 abelian data; quaternion jumps {1, 3/2}".into())
}

fn criterion_4() -> Outcome {
    let mut count = 0;
    for e in 1..=6usize {
        let ext = build_tame(tame_field(e), e).unwrap();
        let rep = ext.different_valuation().map_err(|err| err.to_string())?;
        ensure(rep.agrees() && rep.value() == e as i64 - 1, || format!("tame e={e}: {rep:?}"))?;
        count += 1;
    }
    for (p, m) in as_params() {
        for r in [1u32, 2] {
            if r == 2 && p == 5 {
                continue;
            }
            let q = p.pow(r);
            let ext = build_artin_schreier(q, r, m, 1).unwrap();
            let rep = ext.different_valuation().map_err(|err| err.to_string())?;
            let n = (p as i64).pow(r);
            ensure(rep.agrees() && rep.value() == (m + 1) * (n - 1), || format!("AS(q={q}, r={r}, m={m}): {rep:?}"))?;
            if m == 1 && r == 1 {
                ensure(rep.value() == 2 * (p as i64 - 1), || format!("AS(p={p}, m=1)"))?;
            }
            count += 1;
        }
    }
    Ok(format!("{count} extensions, three methods each"))
}

/// AS, tame, quaternion, random abelian mixtures and random nonabelian series.
fn test_data() -> Vec<(String, RamificationDatum)> {
    let mut out: Vec<(String, RamificationDatum)> =
        as_params().into_iter().map(|(p, m)| (format!("AS(p={p}, m={m})"), as_datum(p, m))).collect();
    out.extend((1..=6).map(|e| (format!("tame e={e}"), tame_datum(e))));
    out.push(("quaternion".into(), quaternion_datum()));
    let mut rng = verify::rng_from_seed(5);
    for n in 0..30 {
        let p = [2, 3, 5][n % 3];
        out.push((format!("abelian #{n}"), verify::random_abelian_datum(&mut rng, p, 64, true)));
    }
    for n in 0..10 {
        out.push((format!("series #{n}"), verify::random_chain_datum(&mut rng)));
    }
    out
}

fn criterion_5(data: &[(String, RamificationDatum)]) -> Outcome {
    let mut pairs = 0;
    // the nonabelian series are filtered on this very property when generated
    for (name, d) in data.iter().filter(|(n, _)| !n.starts_with("series")) {
        swan::artin_character(d).map_err(|e| format!("{name}: {e}"))?;
        swan::swan_character(d).map_err(|e| format!("{name}: {e}"))?;
        let a = swan::artin_character(d).unwrap();
        let sw = swan::swan_character(d).unwrap();
        for chi in irreducible_characters(d.group()).unwrap() {
            for phi in [&a, &sw] {
                let v = phi.inner_product(&chi).unwrap();
                ensure(v.as_integer().is_some_and(|n| n >= 0.into()), || format!("{name}: pairing {v}"))?;
            }
            let f = swan::conductor_f(d, &chi).map_err(|e| format!("{name}: {e}"))?;
            ensure(a.inner_product(&chi).unwrap().as_i64() == Some(f), || format!("{name}: f(chi)"))?;
            pairs += 1;
        }
    }
    for (p, m) in as_params() {
        let d = as_datum(p, m);
        for chi in &irreducible_characters(d.group()).unwrap()[1..] {
            ensure(swan::conductor_f(&d, chi) == Ok(m + 1), || format!("AS(p={p}, m={m}): f(chi) != m + 1"))?;
        }
    }
    Ok(format!("{pairs} (datum, irreducible) pairs"))
}

fn criterion_6(data: &[(String, RamificationDatum)]) -> Outcome {
    let mut pairs = 0;
    for (name, d) in data {
        let g1 = d.wild_inertia();
        for chi in irreducible_characters(d.group()).unwrap() {
            let m = swan::swan_methods(d, &chi).map_err(|e| format!("{name}: {e}"))?;
            ensure(m.agree(), || format!("{name}: {m:?}"))?;
            let s = &m.from_character;
            ensure(s.is_integer() && *s >= Rational::from_integer(0.into()), || format!("{name}: Swan {s}"))?;
            let tame = chi.fixed_space_dim(&g1).unwrap() == chi.degree().as_i64().unwrap();
            ensure((*s == int(0)) == tame, || format!("{name}: tameness criterion"))?;
            pairs += 1;
        }
    }
    for (p, m) in as_params() {
        let d = as_datum(p, m);
        for chi in &irreducible_characters(d.group()).unwrap()[1..] {
            ensure(swan::swan_conductor(&d, chi) == Ok(m), || format!("AS(p={p}, m={m}): Swan != m"))?;
        }
    }
    Ok(format!("{pairs} (datum, irreducible) pairs, three methods each"))
}

fn criterion_7() -> Outcome {
    let mut rng = verify::rng_from_seed(7);
    let mut orders = Vec::new();
    for n in 0..50 {
        let d = verify::random_datum(&mut rng);
        ensure(d.group().order() <= 64, || "group too large".into())?;
        orders.push(d.group().order());
        verify::check_idempotents(&mut rng, &d, 16).map_err(|e| format!("representation {n}: {e}"))?;
    }
    Ok(format!("50 representations, group orders {}..={}", orders.iter().min().unwrap(), orders.iter().max().unwrap()))
}

fn fixed_covers() -> Vec<(String, CoverSpec)> {
    let mut out = Vec::new();
    for p in [3u32, 5] {
        for m in 1..=4i64 {
            if m % p as i64 != 0 {
                out.push((format!("AS cover p={p} m={m}"), curves::artin_schreier_cover(p, m, None).unwrap()));
            }
        }
    }
    out.push(("AS cover p=2 m=1".into(), curves::artin_schreier_cover(2, 1, None).unwrap()));
    for e in [2usize, 3, 6] {
        out.push((format!("Kummer cover e={e}"), curves::kummer_cover(7, e, None).unwrap()));
    }
    let g = Arc::new(FiniteGroup::cyclic(1));
    out.push(("trivial cover".into(), CoverSpec::new(1, g.clone(), vec![], ClassFunction::trivial(g)).unwrap()));
    out
}

fn random_covers(seed: u64) -> Vec<(String, CoverSpec)> {
    let mut rng = verify::rng_from_seed(seed);
    (0..100).map(|n| (format!("random cover #{n}"), verify::random_cover(&mut rng))).collect()
}

fn criterion_8(random: &[(String, CoverSpec)]) -> Outcome {
    for p in [3u32, 5] {
        for m in 1..=4i64 {
            if m % p as i64 == 0 {
                continue;
            }
            let cover = curves::artin_schreier_cover(p, m, None).unwrap();
            let psi = irreducible_characters(&cover.group).unwrap()[1].clone();
            let chi_c = curves::gos_chi_c(&cover.with_character(psi).unwrap()).map_err(|e| e.to_string())?;
            ensure(chi_c == 1 - m, || format!("chi_c(A^1, L) = {chi_c} for p={p}, m={m}"))?;
        }
    }
    let as_cover = curves::artin_schreier_cover(3, 1, None).unwrap();
    let kummer = curves::kummer_cover(7, 3, None).unwrap();
    for (name, cover) in [("AS cover".to_string(), as_cover), ("Kummer cover".to_string(), kummer)].iter().chain(random) {
        let rep = curves::regular_consistency(cover).map_err(|e| format!("{name}: {e}"))?;
        ensure(rep.passed, || format!("{name}: GOS {} vs Hurwitz {}", rep.gos, rep.hurwitz))?;
    }
    Ok(format!("chi_c = 1 - m on 6 sheaves; regular consistency on {} covers", random.len() + 2))
}

fn criterion_9(covers: &[(String, CoverSpec)]) -> Outcome {
    let mut points = 0;
    for (name, cover) in covers {
        let g = &cover.group;
        let mut chars = irreducible_characters(g).unwrap();
        chars.push(cover.character.clone());
        for x in &cover.boundary {
            for chi in &chars {
                let via_class = curves::swan_via_class(cover, x, chi).map_err(|e| format!("{name}: {e}"))?;
                let local = curves::local_swan(x, chi).map_err(|e| format!("{name}: {e}"))?;
                ensure(via_class == local, || format!("{name} at {}", x.name))?;
            }
            let total: i64 = g.elements().map(|s| curves::sw_class(cover, x, s)).sum();
            ensure(total == 0, || format!("{name}: Swan class at {} pairs to {total} with 1", x.name))?;
            points += 1;
        }
        for s in 1..g.order() {
            let a = curves::intersection_number(cover, s).map_err(|e| e.to_string())?;
            let b = curves::intersection_number_direct(cover, s).map_err(|e| e.to_string())?;
            let c = curves::intersection_via_swan_class(cover, s).map_err(|e| e.to_string())?;
            ensure(a == b && b == c, || format!("{name}: intersection numbers at {s}: {a}, {b}, {c}"))?;
        }
    }
    Ok(format!("{} covers, {points} boundary points", covers.len()))
}

fn criterion_10() -> Outcome {
    let groups: Vec<Arc<FiniteGroup>> = builtin_groups(64).into_iter().map(Arc::new).collect();
    for g in &groups {
        let irr = irreducible_characters(g).map_err(|e| e.to_string())?;
        ensure(irr.len() == g.class_count(), || format!("{:?}: {} irreducibles", g.tag(), irr.len()))?;
        let s: i64 = irr.iter().map(|c| c.degree().as_i64().unwrap().pow(2)).sum();
        ensure(s == g.order() as i64, || format!("{:?}: sum of squared degrees {s}", g.tag()))?;
    }
    let mut rng = verify::rng_from_seed(10);
    for n in 0..500 {
        let g = &groups[n % groups.len()];
        verify::check_character_theory(&mut rng, g).map_err(|e| format!("case {n}: {e}"))?;
    }
    Ok(format!("{} built-in groups, 500 random cases", groups.len()))
}

fn criterion_11(random: &[(String, CoverSpec)]) -> Outcome {
    for m in 1..=4i64 {
        let base = curves::artin_schreier_cover(5, m, None).unwrap();
        let psi = irreducible_characters(&base.group).unwrap()[1].clone();
        let cover = base.with_character(psi).unwrap();
        let sd = curves::swan_divisor(&cover).map_err(|e| e.to_string())?;
        ensure(sd.entries == BTreeMap::from([("inf".to_string(), m)]), || format!("Swan divisor {:?}", sd.entries))?;
        let d = |k: i64| BTreeMap::from([("inf".to_string(), k)]);
        ensure(curves::bounded_by(&sd, &d(m)) == Ok(true), || format!("not bounded by {m}[inf]"))?;
        ensure(curves::bounded_by(&sd, &d(m - 1)) == Ok(false), || format!("bounded by {}[inf]", m - 1))?;
        let rep = curves::complexity_bound_check(&cover, m).map_err(|e| e.to_string())?;
        ensure(rep.passed && rep.complexity == 2 * m + 1, || format!("{rep:?}"))?;
    }
    for (name, cover) in random {
        let (r, divisor) = verify::bounding_divisor(cover).map_err(|e| e.to_string())?;
        let scaled = divisor.iter().map(|(k, v)| (k.clone(), r * v)).collect();
        let sd = curves::swan_divisor(cover).map_err(|e| e.to_string())?;
        ensure(curves::bounded_by(&sd, &scaled) == Ok(true), || format!("{name}: not bounded"))?;
        let d = curves::divisor_degree(cover, &divisor).map_err(|e| e.to_string())?;
        let rep = curves::complexity_bound_check(cover, d).map_err(|e| e.to_string())?;
        ensure(rep.passed, || format!("{name}: r - chi_c = {} > r C_d = {}", rep.rank - rep.chi_c, rep.rank * rep.complexity))?;
    }
    Ok(format!("Swan divisor m[inf] for m = 1..4; complexity bound on {} covers", random.len()))
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() {
    let start = Instant::now();
    let data = test_data();
    let random = random_covers(8);
    let mut all_covers = fixed_covers();
    all_covers.extend(random.iter().cloned());

    let criteria: Vec<Criterion> = vec![
        ("Artin-Schreier lower filtrations", Box::new(criterion_1)),
        ("Herbrand closed forms and psi integrality", Box::new(criterion_2)),
        ("Hasse-Arf on abelian data, quaternion jumps", Box::new(criterion_3)),
        ("different computed three ways", Box::new(criterion_4)),
        ("Artin and Swan character integrality", Box::new(|| criterion_5(&data))),
        ("Swan conductor computed three ways", Box::new(|| criterion_6(&data))),
        ("break decomposition by idempotents", Box::new(criterion_7)),
        ("Grothendieck-Ogg-Shafarevich and regular consistency", Box::new(|| criterion_8(&random))),
        ("Swan class reconciliation", Box::new(|| criterion_9(&all_covers))),
        ("character theory properties", Box::new(criterion_10)),
        ("bounded ramification and complexity", Box::new(|| criterion_11(&random))),
    ];

    let mut failed = 0;
    for (k, (title, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2}: {title} [exact] ({detail}; {secs:.2}s)", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {title} [exact] ({why}; {secs:.2}s)", k + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed in {:.1}s", criteria.len() - failed, criteria.len(), start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
