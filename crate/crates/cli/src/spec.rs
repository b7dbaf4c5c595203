//! Spec files: one JSON schema (`schema: 1`), with TOML accepted as sugar.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;

use ramify::algebra::Cyclotomic;
use ramify::curves::{BoundaryPoint, CoverSpec, Divisor};
use ramify::groups::{irreducible_characters, ClassFunction, FiniteGroup};
use ramify::local_field::{build_artin_schreier, build_tame, MonogenicExtension};
use ramify::ramification::{datum_from_extension, RamificationDatum};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Deserialize)]
pub struct SpecFile {
    pub schema: u32,
    pub precision: Option<i64>,
    pub extension: Option<ExtensionSpec>,
    pub datum: Option<DatumSpec>,
    pub group: Option<GroupSpec>,
    pub character: Option<CharacterSpec>,
    pub cover: Option<CoverFileSpec>,
    /// Bounding divisor for `gos`, by boundary point name.
    pub divisor: Option<BTreeMap<String, i64>>,
    /// Normal subgroup for the Herbrand checks.
    pub subgroup: Option<Vec<usize>>,
}

/// `kind = "tame"` with `e`, or `kind = "artin_schreier"` with `m` (and `r`, `c`).
#[derive(Debug, Clone, Deserialize)]
pub struct ExtensionSpec {
    pub kind: String,
    pub q: u32,
    pub e: Option<usize>,
    pub r: Option<u32>,
    pub m: Option<i64>,
    pub c: Option<u32>,
}

/// Either an extension, or a group with a filtration (`G_0, G_1, ...`) or with
/// `i_g` listed for the elements `1, 2, ..., |G| - 1`.
#[derive(Debug, Clone, Deserialize)]
pub struct DatumSpec {
    pub extension: Option<ExtensionSpec>,
    pub group: Option<GroupSpec>,
    pub filtration: Option<Vec<Vec<usize>>>,
    pub i_g: Option<Vec<i64>>,
    pub f: Option<usize>,
    pub p: Option<u32>,
}

/// `builder` is one of `cyclic`, `elementary_abelian`, `dihedral`, `quaternion8`,
/// `direct_product`, `table`.
#[derive(Debug, Clone, Deserialize)]
pub struct GroupSpec {
    pub builder: String,
    pub n: Option<usize>,
    pub p: Option<usize>,
    pub r: Option<u32>,
    pub factors: Option<Vec<GroupSpec>>,
    pub table: Option<Vec<Vec<usize>>>,
}

/// Exactly one of: an irreducible index, multiplicities against the
/// irreducibles, integer values per class, or `standard` in
/// `trivial`, `regular`, `augmentation`.
#[derive(Debug, Clone, Deserialize)]
pub struct CharacterSpec {
    pub irreducible: Option<usize>,
    pub multiplicities: Option<Vec<i64>>,
    pub values: Option<Vec<i64>>,
    pub standard: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct CoverFileSpec {
    pub genus: i64,
    pub group: GroupSpec,
    pub data: BTreeMap<String, DatumSpec>,
    pub boundary: Vec<PointSpec>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct PointSpec {
    pub name: String,
    pub degree: Option<i64>,
    pub datum: String,
    /// Image in `G` of each element of the local group; defaults to `s -> s`.
    pub embedding: Option<Vec<usize>>,
}

fn spec_err(msg: impl Into<String>) -> CliError {
    CliError::Spec(msg.into())
}

/// Parses a spec; unknown fields are errors unless `lenient`, in which case
/// they are returned as warnings.
pub fn parse(text: &str, path: Option<&Path>, lenient: bool) -> Result<(SpecFile, Vec<String>), CliError> {
    let is_toml = path.and_then(|p| p.extension()).is_some_and(|e| e == "toml");
    let value: serde_json::Value = if is_toml {
        let v: toml::Value = toml::from_str(text).map_err(|e| spec_err(format!("TOML: {e}")))?;
        serde_json::to_value(v).map_err(|e| spec_err(e.to_string()))?
    } else {
        serde_json::from_str(text).map_err(|e| spec_err(format!("JSON: {e}")))?
    };
    let mut unknown = Vec::new();
    let spec: SpecFile =
        serde_ignored::deserialize(value, |p| unknown.push(p.to_string().replace(".?", ""))).map_err(|e| spec_err(e.to_string()))?;
    if spec.schema != SCHEMA_VERSION {
        return Err(spec_err(format!("unsupported schema {} (expected {SCHEMA_VERSION})", spec.schema)));
    }
    if !unknown.is_empty() && !lenient {
        return Err(spec_err(format!("unknown fields: {}", unknown.join(", "))));
    }
    Ok((spec, unknown))
}

fn need<T: Copy>(v: Option<T>, what: &str) -> Result<T, CliError> {
    v.ok_or_else(|| spec_err(format!("missing field `{what}`")))
}

pub fn build_group(g: &GroupSpec) -> Result<FiniteGroup, CliError> {
    let small = |n: usize| if n == 0 || n > 4096 { Err(spec_err(format!("group order {n} out of range"))) } else { Ok(n) };
    Ok(match g.builder.as_str() {
        "cyclic" => FiniteGroup::cyclic(small(need(g.n, "n")?)?),
        "dihedral" => FiniteGroup::dihedral(small(need(g.n, "n")?)?),
        "quaternion8" => FiniteGroup::quaternion8(),
        "elementary_abelian" => {
            let (p, r) = (need(g.p, "p")?, need(g.r, "r")?);
            if !ramify::algebra::finite_field::is_prime(p as u64) {
                return Err(spec_err(format!("{p} is not prime")));
            }
            small(p.checked_pow(r).unwrap_or(0))?;
            FiniteGroup::elementary_abelian(p, r)
        }
        "direct_product" => {
            let factors = g.factors.as_deref().ok_or_else(|| spec_err("missing field `factors`"))?;
            let mut it = factors.iter();
            let mut acc = build_group(it.next().ok_or_else(|| spec_err("empty `factors`"))?)?;
            for f in it {
                let next = build_group(f)?;
                small(acc.order() * next.order())?;
                acc = FiniteGroup::direct_product(&acc, &next);
            }
            acc
        }
        "table" => {
            let t = g.table.clone().ok_or_else(|| spec_err("missing field `table`"))?;
            FiniteGroup::from_table(t).map_err(|e| spec_err(e.to_string()))?
        }
        other => return Err(spec_err(format!("unknown group builder `{other}`"))),
    })
}

pub fn build_extension(e: &ExtensionSpec, precision: i64) -> Result<MonogenicExtension, CliError> {
    let ext = match e.kind.as_str() {
        "tame" => build_tame(e.q, need(e.e, "e")?),
        "artin_schreier" => build_artin_schreier(e.q, e.r.unwrap_or(1), need(e.m, "m")?, e.c.unwrap_or(1)),
        other => return Err(spec_err(format!("unknown extension kind `{other}`"))),
    }
    .map_err(|err| CliError::SpecLib(err.into()))?;
    Ok(ext.with_precision(precision))
}

pub fn build_datum(d: &DatumSpec, precision: i64, unchecked: bool) -> Result<RamificationDatum, CliError> {
    if let Some(e) = &d.extension {
        if d.group.is_some() || d.filtration.is_some() || d.i_g.is_some() {
            return Err(spec_err("a datum gives either `extension` or `group`, not both"));
        }
        let ext = build_extension(e, precision)?;
        return datum_from_extension(&ext).map_err(|err| CliError::from_lib(err.into()));
    }
    let g = Arc::new(build_group(d.group.as_ref().ok_or_else(|| spec_err("a datum needs `extension` or `group`"))?)?);
    let (f, p) = (d.f.unwrap_or(1), need(d.p, "p")?);
    let built = match (&d.filtration, &d.i_g) {
        (Some(chain), None) => {
            if unchecked {
                RamificationDatum::from_filtration_unchecked(g, chain, f, p)
            } else {
                RamificationDatum::from_filtration(g, chain, f, p)
            }
        }
        (None, Some(values)) => {
            let mut i_g = vec![None];
            i_g.extend(values.iter().map(|&v| Some(v)));
            if unchecked {
                RamificationDatum::from_i_values_unchecked(g, i_g, f, p)
            } else {
                RamificationDatum::from_i_values(g, i_g, f, p)
            }
        }
        _ => return Err(spec_err("an abstract datum needs exactly one of `filtration` and `i_g`")),
    };
    built.map_err(|e| CliError::SpecLib(e.into()))
}

pub fn build_character(c: &CharacterSpec, g: &Arc<FiniteGroup>) -> Result<ClassFunction, CliError> {
    let given = [c.irreducible.is_some(), c.multiplicities.is_some(), c.values.is_some(), c.standard.is_some()];
    if given.iter().filter(|&&b| b).count() != 1 {
        return Err(spec_err("a character gives exactly one of `irreducible`, `multiplicities`, `values`, `standard`"));
    }
    let lib = |e: ramify::groups::GroupError| CliError::SpecLib(e.into());
    if let Some(k) = c.irreducible {
        let irr = irreducible_characters(g).map_err(lib)?;
        return irr.get(k).cloned().ok_or_else(|| spec_err(format!("irreducible index {k} out of range (0..{})", irr.len())));
    }
    if let Some(m) = &c.multiplicities {
        if m.len() != g.class_count() {
            return Err(spec_err(format!("{} multiplicities for {} irreducibles", m.len(), g.class_count())));
        }
        return ramify::groups::combination(g, m).map_err(lib);
    }
    if let Some(v) = &c.values {
        return ClassFunction::new(g.clone(), v.iter().map(|&x| Cyclotomic::from_int(x)).collect()).map_err(lib);
    }
    match c.standard.as_deref() {
        Some("trivial") => Ok(ClassFunction::trivial(g.clone())),
        Some("regular") => Ok(ClassFunction::regular(g.clone())),
        Some("augmentation") => Ok(ClassFunction::augmentation(g.clone())),
        other => Err(spec_err(format!("unknown standard character {other:?}"))),
    }
}

pub fn build_cover(spec: &SpecFile, precision: i64, unchecked: bool) -> Result<CoverSpec, CliError> {
    let c = spec.cover.as_ref().ok_or_else(|| spec_err("missing `cover`"))?;
    let g = Arc::new(build_group(&c.group)?);
    let mut data = BTreeMap::new();
    for (name, d) in &c.data {
        data.insert(name.clone(), build_datum(d, precision, unchecked)?);
    }
    let mut boundary = Vec::new();
    for x in &c.boundary {
        let d = data.get(&x.datum).ok_or_else(|| spec_err(format!("point {} names unknown datum `{}`", x.name, x.datum)))?;
        let embedding = x.embedding.clone().unwrap_or_else(|| d.group().elements().collect());
        let point =
            BoundaryPoint::new(x.name.clone(), x.degree.unwrap_or(1), d.clone(), &g, embedding).map_err(|e| CliError::SpecLib(e.into()))?;
        boundary.push(point);
    }
    let chi = match &spec.character {
        Some(ch) => build_character(ch, &g)?,
        None => ClassFunction::trivial(g.clone()),
    };
    CoverSpec::new(c.genus, g, boundary, chi).map_err(|e| CliError::SpecLib(e.into()))
}

pub fn divisor(spec: &SpecFile) -> Option<Divisor> {
    spec.divisor.clone()
}
