use std::sync::Arc;

use serde_json::{json, Map, Value};

use ramify::algebra::{Cyclotomic, Rational};
use ramify::curves::{self, CoverSpec};
use ramify::groups::{decompose, irreducible_characters, ClassFunction, FiniteGroup};
use ramify::ramification::{self, PiecewiseLinear, RamificationDatum};
use ramify::swan::{self, SwanMethods};
use ramify::verify;

use crate::spec::{self, DatumSpec, SpecFile};
use crate::{CliError, Command};

pub struct Context<'a> {
    pub spec: Option<&'a SpecFile>,
    pub precision: i64,
    pub seed: u64,
    pub unchecked: bool,
}

/// A report, plus the reason it should exit with status 3 if some check failed.
pub struct Outcome {
    pub report: Value,
    pub mismatch: Option<String>,
}

fn lib<E: Into<ramify::Error>>(e: E) -> CliError {
    CliError::Lib(e.into())
}

fn rat(r: &Rational) -> Value {
    Value::String(r.to_string())
}

/// Integral rationals become JSON integers, others `"a/b"` strings.
fn rat_num(r: &Rational) -> Value {
    match (r.is_integer(), i64::try_from(r.to_integer())) {
        (true, Ok(n)) => json!(n),
        _ => rat(r),
    }
}

fn cyc(c: &Cyclotomic) -> Value {
    match c.as_i64() {
        Some(n) => json!(n),
        None => Value::String(c.to_string()),
    }
}

fn cyc_list(values: &[Cyclotomic]) -> Value {
    Value::Array(values.iter().map(cyc).collect())
}

fn piecewise(f: &PiecewiseLinear) -> Value {
    let points: Vec<Value> = f.breakpoints().iter().zip(f.values()).map(|(x, y)| json!([rat(x), rat(y)])).collect();
    json!({ "points": points, "slopes": f.slopes().iter().map(rat).collect::<Vec<_>>() })
}

pub fn dispatch(command: Command, ctx: &Context) -> Result<Outcome, CliError> {
    match command {
        Command::Extension => extension(ctx),
        Command::Herbrand => herbrand(ctx),
        Command::Chars => chars(ctx),
        Command::Artin => artin(ctx),
        Command::Swan => swan_cmd(ctx),
        Command::Gos => gos(ctx),
        Command::Verify { cases } => Ok(verify_cmd(ctx.seed, cases)),
    }
}

fn require<'a>(ctx: &'a Context) -> Result<&'a SpecFile, CliError> {
    ctx.spec.ok_or_else(|| CliError::Spec("this command needs --input".into()))
}

fn datum(ctx: &Context) -> Result<RamificationDatum, CliError> {
    let s = require(ctx)?;
    match (&s.datum, &s.extension) {
        (Some(d), None) => spec::build_datum(d, ctx.precision, ctx.unchecked),
        (None, Some(e)) => {
            let d = DatumSpec { extension: Some(e.clone()), group: None, filtration: None, i_g: None, f: None, p: None };
            spec::build_datum(&d, ctx.precision, ctx.unchecked)
        }
        (Some(_), Some(_)) => Err(CliError::Spec("give either `datum` or `extension`, not both".into())),
        (None, None) => Err(CliError::Spec("missing `datum` or `extension`".into())),
    }
}

fn character(ctx: &Context, g: &Arc<FiniteGroup>) -> Result<Option<ClassFunction>, CliError> {
    require(ctx)?.character.as_ref().map(|c| spec::build_character(c, g)).transpose()
}

fn filtration(d: &RamificationDatum) -> Value {
    Value::Array(d.lower_filtration().into_iter().map(|(i, h)| json!({ "index": i, "order": h.len(), "elements": h })).collect())
}

fn extension(ctx: &Context) -> Result<Outcome, CliError> {
    let e = require(ctx)?.extension.as_ref().ok_or_else(|| CliError::Spec("missing `extension`".into()))?;
    let ext = spec::build_extension(e, ctx.precision)?;
    let d = ramification::datum_from_extension(&ext).map_err(lib)?;
    let diff = ext.different_valuation().map_err(lib)?;
    let (a, b) = ext.uniformizer_exponents();
    let i_g: Vec<Value> = d.i_values().iter().map(|v| json!(v)).collect();
    let report = json!({
        "kind": e.kind,
        "q": e.q,
        "p": ext.characteristic(),
        "degree": ext.degree(),
        "residue_degree": ext.residue_degree(),
        "generator_valuation": ext.generator_valuation(),
        "uniformizer": { "t": a, "y": b },
        "group_order": d.group().order(),
        "i_g": i_g,
        "lower_filtration": filtration(&d),
        "different": {
            "from_i_g": diff.from_i_g,
            "from_derivative": diff.from_derivative,
            "from_discriminant": diff.from_discriminant,
            "agrees": diff.agrees(),
        },
    });
    let mismatch = (!diff.agrees()).then(|| format!("different valuation disagrees: {diff:?}"));
    Ok(Outcome { report, mismatch })
}

fn herbrand(ctx: &Context) -> Result<Outcome, CliError> {
    let d = datum(ctx)?;
    let ha = ramification::hasse_arf_check(&d).map_err(lib)?;
    let upper: Vec<Value> = ha.jumps.iter().map(|v| json!({ "v": rat(v), "order": d.upper_group(v).len() })).collect();
    let mut report = json!({
        "group_order": d.group().order(),
        "p": d.residue_characteristic(),
        "f": d.residue_degree(),
        "abelian": ha.abelian,
        "hasse_arf": ha.passed,
        "lower_jumps": d.lower_jumps(),
        "jumps": ha.jumps.iter().map(rat).collect::<Vec<_>>(),
        "upper_filtration": upper,
        "lower_filtration": filtration(&d),
        "phi": piecewise(&d.phi()),
        "psi": piecewise(&d.psi()),
    });
    let mut mismatch = None;
    if let Some(h) = &require(ctx)?.subgroup {
        let hr = ramification::herbrand_checks(&d, h).map_err(|e| CliError::SpecLib(e.into()))?;
        if !hr.all_pass() {
            mismatch = Some(format!("Herbrand checks failed: {}", hr.failures.join("; ")));
        }
        report["herbrand"] = json!({
            "subgroup": h,
            "quotient_lower": hr.quotient_lower,
            "quotient_upper": hr.quotient_upper,
            "transitivity": hr.transitivity,
            "failures": hr.failures,
        });
    }
    Ok(Outcome { report, mismatch })
}

fn chars(ctx: &Context) -> Result<Outcome, CliError> {
    let s = require(ctx)?;
    let g = match (&s.group, &s.cover) {
        (Some(g), _) => Arc::new(spec::build_group(g)?),
        (None, Some(c)) => Arc::new(spec::build_group(&c.group)?),
        (None, None) => datum(ctx)?.group().clone(),
    };
    let irr = irreducible_characters(&g).map_err(lib)?;
    let classes: Vec<Value> = g
        .classes()
        .iter()
        .enumerate()
        .map(|(k, c)| json!({ "index": k, "size": c.len(), "representative": c[0], "elements": c }))
        .collect();
    let characters: Vec<Value> = irr
        .iter()
        .enumerate()
        .map(|(k, chi)| json!({ "index": k, "degree": cyc(chi.degree()), "values": cyc_list(chi.class_values()) }))
        .collect();
    let degree_sum: i64 = irr.iter().map(|chi| chi.degree().as_i64().unwrap_or(0).pow(2)).sum();
    let report = json!({
        "group_order": g.order(),
        "abelian": g.is_abelian(),
        "classes": classes,
        "characters": characters,
    });
    let mismatch = (irr.len() != g.class_count() || degree_sum != g.order() as i64)
        .then(|| format!("{} irreducibles for {} classes, sum of squared degrees {degree_sum}", irr.len(), g.class_count()));
    Ok(Outcome { report, mismatch })
}

fn artin(ctx: &Context) -> Result<Outcome, CliError> {
    let d = datum(ctx)?;
    let a = swan::artin_character(&d).map_err(lib)?;
    let sw = swan::swan_character(&d).map_err(lib)?;
    let irr = irreducible_characters(d.group()).map_err(lib)?;
    let (da, ds) = (decompose(&a).map_err(lib)?, decompose(&sw).map_err(lib)?);
    let per_irr: Vec<Value> = irr
        .iter()
        .enumerate()
        .map(|(k, chi)| json!({ "index": k, "degree": cyc(chi.degree()), "artin": cyc(&da.multiplicities[k]), "swan": cyc(&ds.multiplicities[k]) }))
        .collect();
    let ind = swan::induction_identity_check(&d).map_err(lib)?;
    let mut report = json!({
        "group_order": d.group().order(),
        "artin_character": cyc_list(a.class_values()),
        "swan_character": cyc_list(sw.class_values()),
        "irreducibles": per_irr,
        "induction": { "artin": ind.artin, "swan": ind.swan },
    });
    if let Some(chi) = character(ctx, d.group())? {
        report["character"] = json!({
            "values": cyc_list(chi.class_values()),
            "artin": swan::conductor_f(&d, &chi).map_err(lib)?,
            "swan": swan::swan_conductor(&d, &chi).map_err(lib)?,
        });
    }
    let mismatch = (!ind.all_pass()).then(|| format!("induction identity failed: {ind:?}"));
    Ok(Outcome { report, mismatch })
}

fn swan_entry(d: &RamificationDatum, chi: &ClassFunction) -> Result<(Value, Option<SwanMethods>), CliError> {
    let m = swan::swan_methods(d, chi).map_err(lib)?;
    let profile = swan::break_profile(d, chi).map_err(lib)?;
    let breaks: Map<String, Value> = profile.breaks.iter().map(|(x, r)| (x.to_string(), json!(r))).collect();
    let v = json!({
        "degree": cyc(chi.degree()),
        "swan": rat_num(&m.from_character),
        "methods": m.as_vec().iter().map(rat_num).collect::<Vec<_>>(),
        "breaks": breaks,
        "total_rank": profile.total_rank,
    });
    Ok((v, (!m.agree()).then_some(m)))
}

fn swan_cmd(ctx: &Context) -> Result<Outcome, CliError> {
    let d = datum(ctx)?;
    if let Some(chi) = character(ctx, d.group())? {
        let (report, bad) = swan_entry(&d, &chi)?;
        return Ok(Outcome { report, mismatch: bad.map(|m| format!("Swan methods disagree: {:?}", m.as_vec())) });
    }
    let mut entries = Vec::new();
    let mut mismatch = None;
    for (k, chi) in irreducible_characters(d.group()).map_err(lib)?.iter().enumerate() {
        let (mut v, bad) = swan_entry(&d, chi)?;
        v["index"] = json!(k);
        if let Some(m) = bad {
            mismatch.get_or_insert(format!("Swan methods disagree on irreducible {k}: {:?}", m.as_vec()));
        }
        entries.push(v);
    }
    Ok(Outcome { report: json!({ "irreducibles": entries }), mismatch })
}

fn gos(ctx: &Context) -> Result<Outcome, CliError> {
    let cover = spec::build_cover(require(ctx)?, ctx.precision, ctx.unchecked)?;
    let h = curves::hurwitz(&cover).map_err(lib)?;
    let chi_c = curves::gos_chi_c(&cover).map_err(lib)?;
    let reg = curves::regular_consistency(&cover).map_err(lib)?;
    let mut failures = Vec::new();
    if !reg.passed {
        failures.push(format!("regular character: GOS {} vs Hurwitz {}", reg.gos, reg.hurwitz));
    }

    let mut boundary = Vec::new();
    for x in &cover.boundary {
        let local = curves::local_swan(x, &cover.character).map_err(lib)?;
        let via_class = curves::swan_via_class(&cover, x, &cover.character).map_err(lib)?;
        if local != via_class {
            failures.push(format!("{}: local Swan {local} vs Swan class {via_class}", x.name));
        }
        boundary.push(json!({
            "name": x.name,
            "degree": x.degree,
            "local_order": x.datum.group().order(),
            "points_above": x.points_above(),
            "different": x.different(),
            "swan": local,
            "swan_via_class": via_class,
        }));
    }

    let mut intersections = Vec::new();
    for sigma in cover.group.elements().skip(1) {
        let a = curves::intersection_number(&cover, sigma).map_err(lib)?;
        let b = curves::intersection_number_direct(&cover, sigma).map_err(lib)?;
        let c = curves::intersection_via_swan_class(&cover, sigma).map_err(lib)?;
        if a != b || a != c {
            failures.push(format!("intersection number at {sigma}: {a}, {b}, {c}"));
        }
        intersections.push(json!({ "element": sigma, "value": a, "direct": b, "via_swan_class": c }));
    }

    let report = json!({
        "rank": cover.rank(),
        "chi_c": chi_c,
        "chi_c_base": cover.chi_c_base(),
        "cover": { "genus": h.genus, "chi": h.chi, "chi_c_open": h.chi_c_open },
        "regular": { "gos": reg.gos, "hurwitz": reg.hurwitz, "passed": reg.passed },
        "boundary": boundary,
        "intersections": intersections,
        "bounded_ramification": bounded_ramification(ctx, &cover, &mut failures)?,
    });
    let mismatch = (!failures.is_empty()).then(|| failures.join("; "));
    Ok(Outcome { report, mismatch })
}

/// The divisor from the input file (or the smallest one bounding the Swan divisor),
/// scaled by the rank, and the complexity bound it implies.
fn bounded_ramification(ctx: &Context, cover: &CoverSpec, failures: &mut Vec<String>) -> Result<Value, CliError> {
    let r = cover.rank();
    let divisor = match spec::divisor(require(ctx)?) {
        Some(d) => d,
        None => verify::bounding_divisor(cover).map_err(lib)?.1,
    };
    let sd = curves::swan_divisor(cover).map_err(lib)?;
    let scaled = divisor.iter().map(|(k, v)| (k.clone(), r * v)).collect();
    let bounded = curves::bounded_by(&sd, &scaled).map_err(|e| CliError::SpecLib(e.into()))?;
    let d = curves::divisor_degree(cover, &divisor).map_err(|e| CliError::SpecLib(e.into()))?;
    let mut out = json!({
        "swan_divisor": sd.entries,
        "swan_degree": sd.degree(cover),
        "divisor": divisor,
        "divisor_degree": d,
        "bounded": bounded,
    });
    if bounded {
        let c = curves::complexity_bound_check(cover, d).map_err(lib)?;
        if !c.passed {
            failures.push(format!("complexity bound: r - chi_c = {} > r C_d = {}", c.rank - c.chi_c, c.rank * c.complexity));
        }
        out["complexity"] =
            json!({ "c_d": c.complexity, "r_minus_chi_c": c.rank - c.chi_c, "bound": c.rank * c.complexity, "passed": c.passed });
    }
    Ok(out)
}

fn verify_cmd(seed: u64, cases: usize) -> Outcome {
    let results = verify::run_suite(seed, cases);
    let properties: Vec<Value> = results
        .iter()
        .map(|r| {
            json!({
                "name": r.name,
                "cases": r.cases,
                "failures": r.failures.len(),
                "passed": r.passed(),
                "examples": r.failures.iter().take(3).collect::<Vec<_>>(),
            })
        })
        .collect();
    let failed: Vec<&str> = results.iter().filter(|r| !r.passed()).map(|r| r.name.as_str()).collect();
    let report = json!({ "seed": seed, "cases": cases, "passed": failed.is_empty(), "properties": properties });
    let mismatch = (!failed.is_empty()).then(|| format!("properties failed: {}", failed.join(", ")));
    Outcome { report, mismatch }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ramify::algebra::{int, rat as r};

    #[test]
    fn rationals_render_compactly() {
        assert_eq!(rat_num(&int(2)), json!(2));
        assert_eq!(rat_num(&r(3, 2)), json!("3/2"));
        assert_eq!(rat(&int(-1)), json!("-1"));
    }

    #[test]
    fn verify_is_reproducible() {
        let a = verify_cmd(7, 3).report;
        let b = verify_cmd(7, 3).report;
        assert_eq!(a, b);
    }
}
