//! Scene and moment-map files: a JSON data model with rationals as
//! `p/q` strings, 1-based indices, and canonical orderings, parsed
//! into the domain types with path-annotated errors.
//!
//! A scene document has a required `lie_algebra` section and optional
//! `structure`, `action`, `pairing`, `moment_map`, and `settings`
//! sections:
//!
//! ```text
//! {
//!   "lie_algebra": { "dimension": 3,
//!                    "brackets": [[1, 2, 3, "1"], [1, 3, 2, "-1"], [2, 3, 1, "1"]] },
//!   "structure":   { "nvars": 3, "plectic_degree": 2,
//!                    "omega": [[[1, 2, 3], [[[0, 0, 0], "1"]]]],
//!                    "basepoint": ["0", "0", "0"] },
//!   "action":      { "generators": [[<poly>, ...], ...] },
//!   "pairing":     { "matrix": [["-2", "0", "0"], ...] },
//!   "settings":    { "degree_cap": 6, "sample_points": 3, "seed": 0 }
//! }
//! ```
//!
//! Polynomials are lists of `[exponent-vector, rational]` pairs; forms
//! are lists of `[index-set, polynomial]` pairs with strictly
//! increasing 1-based index sets.  Bracket entries list `c^k_{ij}` as
//! `[i, j, k, value]` with `i < j`; omitted entries are zero.
//!
//! A moment-map file is `{"flavor": "weak"|"homotopy", "components":
//! [{"arity": k, "entries": [[basis-index, form], ...]}, ...]}`, where
//! the basis index counts through the arity's Lie-kernel basis (weak)
//! or the ordered basis subsets (homotopy).

use std::path::Path;

use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::action::{GAction, NPlecticStructure};
use crate::complexes::Flavor;
use crate::forms::{PolyForm, PolyVec};
use crate::lie::LieAlgebra;
use crate::linalg::{format_rat, parse_rat, Rat, RatMatrix};
use crate::moment::MomentMap;
use crate::poly::Poly;
use crate::{Error, Result};

/// Tunables a scene may override; every field has a default.
#[derive(Clone, Copy, Debug)]
pub struct Settings {
    /// Polynomial degree bound for correction searches.
    pub degree_cap: usize,
    /// Number of extra sample points for pointwise checks.
    pub sample_points: usize,
    /// Seed for the deterministic sample-point generator.
    pub seed: u64,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            degree_cap: 6,
            sample_points: 3,
            seed: 0,
        }
    }
}

/// A parsed scene: the algebra always, the rest as provided.
#[derive(Clone, Debug)]
pub struct Scene {
    pub algebra: LieAlgebra,
    pub structure: Option<NPlecticStructure>,
    pub action: Option<GAction>,
    pub pairing: Option<RatMatrix>,
    pub moment_map: Option<MomentMap>,
    pub settings: Settings,
    /// Hex SHA-256 of the raw document bytes.
    pub digest: String,
}

impl Scene {
    /// The action and structure together, or an error naming the
    /// missing section.
    pub fn action_and_structure(&self) -> Result<(GAction, NPlecticStructure)> {
        let action = self.action.clone().ok_or_else(|| {
            Error::Precondition("this command needs an action section in the scene".into())
        })?;
        let structure = self.structure.clone().ok_or_else(|| {
            Error::Precondition("this command needs a structure section in the scene".into())
        })?;
        Ok((action, structure))
    }

    /// Deterministic rational sample points derived from the seed:
    /// `settings.sample_points` points with coordinates in [-3, 3].
    pub fn sample_points(&self) -> Vec<Vec<Rat>> {
        let nvars = match &self.structure {
            Some(s) => s.nvars(),
            None => return Vec::new(),
        };
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(self.settings.seed);
        (0..self.settings.sample_points)
            .map(|_| {
                (0..nvars)
                    .map(|_| Rat::from_integer(rng.gen_range(-3i64..=3).into()))
                    .collect()
            })
            .collect()
    }
}

fn as_object<'a>(v: &'a Value, at: &str) -> Result<&'a serde_json::Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::parse(at, "expected an object"))
}

fn as_array<'a>(v: &'a Value, at: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::parse(at, "expected an array"))
}

fn as_index(v: &Value, at: &str) -> Result<usize> {
    v.as_u64()
        .map(|u| u as usize)
        .ok_or_else(|| Error::parse(at, "expected a nonnegative integer"))
}

fn as_rational(v: &Value, at: &str) -> Result<Rat> {
    let s = v
        .as_str()
        .ok_or_else(|| Error::parse(at, "expected a rational string like \"3/4\""))?;
    parse_rat(s).map_err(|e| Error::parse(at, e.to_string()))
}

fn get<'a>(
    obj: &'a serde_json::Map<String, Value>,
    key: &str,
    at: &str,
) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::parse(at, format!("missing required key `{key}`")))
}

/// Appends a path segment, collapsing the root `/`.
fn sub_at(at: &str, segment: &str) -> String {
    if at == "/" {
        format!("/{segment}")
    } else {
        format!("{at}/{segment}")
    }
}

fn reject_unknown_keys(
    obj: &serde_json::Map<String, Value>,
    allowed: &[&str],
    at: &str,
) -> Result<()> {
    for key in obj.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(Error::parse(
                sub_at(at, key),
                format!("unknown key (expected one of: {})", allowed.join(", ")),
            ));
        }
    }
    Ok(())
}

/// One-based index with an exclusive upper bound, converted to
/// zero-based.
fn parse_index_1based(v: &Value, bound: usize, at: &str) -> Result<usize> {
    let i = as_index(v, at)?;
    if i < 1 || i > bound {
        return Err(Error::parse(
            at,
            format!("index {i} out of range 1..={bound}"),
        ));
    }
    Ok(i - 1)
}

fn parse_poly(v: &Value, nvars: usize, at: &str) -> Result<Poly> {
    let pairs = as_array(v, at)?;
    let mut out = Poly::zero(nvars);
    for (t, pair) in pairs.iter().enumerate() {
        let at = format!("{at}/{t}");
        let pair = as_array(pair, &at)?;
        if pair.len() != 2 {
            return Err(Error::parse(&at, "expected [exponent-vector, rational]"));
        }
        let exps_v = as_array(&pair[0], &format!("{at}/0"))?;
        if exps_v.len() != nvars {
            return Err(Error::parse(
                format!("{at}/0"),
                format!("expected {nvars} exponents, got {}", exps_v.len()),
            ));
        }
        let mut exps = Vec::with_capacity(nvars);
        for (i, e) in exps_v.iter().enumerate() {
            exps.push(as_index(e, &format!("{at}/0/{i}"))? as u32);
        }
        let c = as_rational(&pair[1], &format!("{at}/1"))?;
        out = out.add(&Poly::monomial(nvars, exps, c));
    }
    Ok(out)
}

fn parse_form(v: &Value, nvars: usize, degree: usize, at: &str) -> Result<PolyForm> {
    let pairs = as_array(v, at)?;
    let mut out = PolyForm::zero(nvars, degree);
    for (t, pair) in pairs.iter().enumerate() {
        let at = format!("{at}/{t}");
        let pair = as_array(pair, &at)?;
        if pair.len() != 2 {
            return Err(Error::parse(&at, "expected [index-set, polynomial]"));
        }
        let set_v = as_array(&pair[0], &format!("{at}/0"))?;
        if set_v.len() != degree {
            return Err(Error::parse(
                format!("{at}/0"),
                format!("expected {degree} indices, got {}", set_v.len()),
            ));
        }
        let mut set = Vec::with_capacity(degree);
        for (i, s) in set_v.iter().enumerate() {
            set.push(parse_index_1based(s, nvars, &format!("{at}/0/{i}"))?);
        }
        if set.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::parse(
                format!("{at}/0"),
                "index set must be strictly increasing",
            ));
        }
        let p = parse_poly(&pair[1], nvars, &format!("{at}/1"))?;
        out.add_comp(set, p);
    }
    Ok(out)
}

fn parse_algebra(v: &Value, at: &str) -> Result<LieAlgebra> {
    let obj = as_object(v, at)?;
    reject_unknown_keys(obj, &["dimension", "brackets"], at)?;
    let dim = as_index(get(obj, "dimension", at)?, &format!("{at}/dimension"))?;
    let mut triples = Vec::new();
    if let Some(brackets) = obj.get("brackets") {
        let entries = as_array(brackets, &format!("{at}/brackets"))?;
        for (t, entry) in entries.iter().enumerate() {
            let at = format!("{at}/brackets/{t}");
            let entry = as_array(entry, &at)?;
            if entry.len() != 4 {
                return Err(Error::parse(&at, "expected [i, j, k, value]"));
            }
            let i = parse_index_1based(&entry[0], dim, &format!("{at}/0"))?;
            let j = parse_index_1based(&entry[1], dim, &format!("{at}/1"))?;
            let k = parse_index_1based(&entry[2], dim, &format!("{at}/2"))?;
            if i >= j {
                return Err(Error::parse(&at, "bracket entries need i < j"));
            }
            let c = as_rational(&entry[3], &format!("{at}/3"))?;
            triples.push((i, j, k, c));
        }
    }
    LieAlgebra::from_brackets(dim, &triples).map_err(|e| Error::parse(at, e.to_string()))
}

fn parse_structure(v: &Value, at: &str) -> Result<NPlecticStructure> {
    let obj = as_object(v, at)?;
    reject_unknown_keys(obj, &["nvars", "plectic_degree", "omega", "basepoint"], at)?;
    let nvars = as_index(get(obj, "nvars", at)?, &format!("{at}/nvars"))?;
    let n = as_index(get(obj, "plectic_degree", at)?, &format!("{at}/plectic_degree"))?;
    if n == 0 || n + 1 > nvars {
        return Err(Error::parse(
            format!("{at}/plectic_degree"),
            format!("need 1 <= plectic_degree <= nvars - 1 = {}", nvars. saturating_sub(1)),
        ));
    }
    let omega = parse_form(get(obj, "omega", at)?, nvars, n + 1, &format!("{at}/omega"))?;
    let basepoint = match obj.get("basepoint") {
        Some(bp) => {
            let at = format!("{at}/basepoint");
            let entries = as_array(bp, &at)?;
            if entries.len() != nvars {
                return Err(Error::parse(
                    &at,
                    format!("expected {nvars} coordinates, got {}", entries.len()),
                ));
            }
            entries
                .iter()
                .enumerate()
                .map(|(i, e)| as_rational(e, &format!("{at}/{i}")))
                .collect::<Result<Vec<_>>>()?
        }
        None => vec![Rat::from_integer(0.into()); nvars],
    };
    NPlecticStructure::new(nvars, n, omega, basepoint).map_err(|e| Error::parse(at, e.to_string()))
}

fn parse_action(v: &Value, algebra: &LieAlgebra, nvars: usize, at: &str) -> Result<GAction> {
    let obj = as_object(v, at)?;
    reject_unknown_keys(obj, &["generators"], at)?;
    let gens_v = as_array(get(obj, "generators", at)?, &format!("{at}/generators"))?;
    if gens_v.len() != algebra.dim() {
        return Err(Error::parse(
            format!("{at}/generators"),
            format!(
                "expected one generator per basis element ({}), got {}",
                algebra.dim(),
                gens_v.len()
            ),
        ));
    }
    let mut gens = Vec::with_capacity(gens_v.len());
    for (i, gen) in gens_v.iter().enumerate() {
        let at = format!("{at}/generators/{i}");
        let comps_v = as_array(gen, &at)?;
        if comps_v.len() != nvars {
            return Err(Error::parse(
                &at,
                format!("expected {nvars} component polynomials, got {}", comps_v.len()),
            ));
        }
        let comps = comps_v
            .iter()
            .enumerate()
            .map(|(c, p)| parse_poly(p, nvars, &format!("{at}/{c}")))
            .collect::<Result<Vec<_>>>()?;
        gens.push(PolyVec::new(comps));
    }
    GAction::new(algebra.clone(), gens).map_err(|e| Error::parse(at, e.to_string()))
}

fn parse_pairing(v: &Value, dim: usize, at: &str) -> Result<RatMatrix> {
    let obj = as_object(v, at)?;
    reject_unknown_keys(obj, &["matrix"], at)?;
    let rows_v = as_array(get(obj, "matrix", at)?, &format!("{at}/matrix"))?;
    if rows_v.len() != dim {
        return Err(Error::parse(
            format!("{at}/matrix"),
            format!("expected {dim} rows, got {}", rows_v.len()),
        ));
    }
    let mut rows = Vec::with_capacity(dim);
    for (i, row) in rows_v.iter().enumerate() {
        let at = format!("{at}/matrix/{i}");
        let entries = as_array(row, &at)?;
        if entries.len() != dim {
            return Err(Error::parse(
                &at,
                format!("expected {dim} entries, got {}", entries.len()),
            ));
        }
        rows.push(
            entries
                .iter()
                .enumerate()
                .map(|(j, e)| as_rational(e, &format!("{at}/{j}")))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    RatMatrix::from_rows(rows).map_err(|e| Error::parse(at, e.to_string()))
}

fn parse_settings(v: &Value, at: &str) -> Result<Settings> {
    let obj = as_object(v, at)?;
    reject_unknown_keys(obj, &["degree_cap", "sample_points", "seed"], at)?;
    let mut out = Settings::default();
    if let Some(cap) = obj.get("degree_cap") {
        out.degree_cap = as_index(cap, &format!("{at}/degree_cap"))?;
    }
    if let Some(sp) = obj.get("sample_points") {
        out.sample_points = as_index(sp, &format!("{at}/sample_points"))?;
    }
    if let Some(seed) = obj.get("seed") {
        out.seed = seed
            .as_u64()
            .ok_or_else(|| Error::parse(format!("{at}/seed"), "expected a nonnegative integer"))?;
    }
    Ok(out)
}

fn parse_moment_map_value(
    v: &Value,
    nvars: usize,
    n: usize,
    at: &str,
) -> Result<MomentMap> {
    let obj = as_object(v, at)?;
    reject_unknown_keys(obj, &["flavor", "components"], at)?;
    let flavor_s = get(obj, "flavor", at)?
        .as_str()
        .ok_or_else(|| Error::parse(sub_at(at, "flavor"), "expected \"weak\" or \"homotopy\""))?;
    let flavor = match flavor_s {
        "weak" => Flavor::Kernel,
        "homotopy" => Flavor::Full,
        other => {
            return Err(Error::parse(
                sub_at(at, "flavor"),
                format!("unknown flavor `{other}` (expected \"weak\" or \"homotopy\")"),
            ))
        }
    };
    let mut map = MomentMap::new(flavor, n, nvars);
    let comps_v = as_array(get(obj, "components", at)?, &sub_at(at, "components"))?;
    for (ci, comp) in comps_v.iter().enumerate() {
        let at = sub_at(at, &format!("components/{ci}"));
        let obj = as_object(comp, &at)?;
        reject_unknown_keys(obj, &["arity", "entries"], &at)?;
        let arity = as_index(get(obj, "arity", &at)?, &format!("{at}/arity"))?;
        if arity < 1 || arity > n {
            return Err(Error::parse(
                format!("{at}/arity"),
                format!("arity {arity} out of range 1..={n}"),
            ));
        }
        if map.component(arity).is_some() {
            return Err(Error::parse(
                format!("{at}/arity"),
                format!("arity {arity} appears twice"),
            ));
        }
        let entries_v = as_array(get(obj, "entries", &at)?, &format!("{at}/entries"))?;
        let mut forms: Vec<(usize, PolyForm)> = Vec::new();
        for (t, entry) in entries_v.iter().enumerate() {
            let at = format!("{at}/entries/{t}");
            let entry = as_array(entry, &at)?;
            if entry.len() != 2 {
                return Err(Error::parse(&at, "expected [basis-index, form]"));
            }
            let idx = as_index(&entry[0], &format!("{at}/0"))?;
            if idx < 1 {
                return Err(Error::parse(format!("{at}/0"), "basis indices are 1-based"));
            }
            if forms.iter().any(|(j, _)| *j == idx - 1) {
                return Err(Error::parse(
                    format!("{at}/0"),
                    format!("basis index {idx} appears twice"),
                ));
            }
            let form = parse_form(&entry[1], nvars, n - arity, &format!("{at}/1"))?;
            forms.push((idx - 1, form));
        }
        let len = forms.iter().map(|(j, _)| j + 1).max().unwrap_or(0);
        let mut dense = vec![PolyForm::zero(nvars, n - arity); len];
        for (j, f) in forms {
            dense[j] = f;
        }
        map.set_component(arity, dense);
    }
    Ok(map)
}

/// Parses a scene document from its raw text.
pub fn parse_scene_str(text: &str) -> Result<Scene> {
    let root: Value = serde_json::from_str(text)
        .map_err(|e| Error::parse("/", format!("invalid JSON: {e}")))?;
    let obj = as_object(&root, "/")?;
    reject_unknown_keys(
        obj,
        &[
            "lie_algebra",
            "structure",
            "action",
            "pairing",
            "moment_map",
            "settings",
        ],
        "/",
    )?;

    let algebra = parse_algebra(get(obj, "lie_algebra", "/")?, "/lie_algebra")?;
    let structure = obj
        .get("structure")
        .map(|v| parse_structure(v, "/structure"))
        .transpose()?;
    let action = match obj.get("action") {
        Some(v) => {
            let s = structure.as_ref().ok_or_else(|| {
                Error::parse("/action", "an action section requires a structure section")
            })?;
            Some(parse_action(v, &algebra, s.nvars(), "/action")?)
        }
        None => None,
    };
    let pairing = obj
        .get("pairing")
        .map(|v| parse_pairing(v, algebra.dim(), "/pairing"))
        .transpose()?;
    let moment_map = match obj.get("moment_map") {
        Some(v) => {
            let s = structure.as_ref().ok_or_else(|| {
                Error::parse("/moment_map", "a moment_map section requires a structure section")
            })?;
            Some(parse_moment_map_value(
                v,
                s.nvars(),
                s.plectic_degree(),
                "/moment_map",
            )?)
        }
        None => None,
    };
    let settings = obj
        .get("settings")
        .map(|v| parse_settings(v, "/settings"))
        .transpose()?
        .unwrap_or_default();

    let digest = hex_digest(text.as_bytes());
    Ok(Scene {
        algebra,
        structure,
        action,
        pairing,
        moment_map,
        settings,
        digest,
    })
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Precondition(format!("cannot read {}: {e}", path.display())))
}

/// Loads and parses a scene file.
pub fn load_scene(path: &Path) -> Result<Scene> {
    parse_scene_str(&read_file(path)?)
}

/// Parses a standalone moment-map document against the scene's
/// structure dimensions.
pub fn parse_moment_map_str(text: &str, s: &NPlecticStructure) -> Result<MomentMap> {
    let root: Value = serde_json::from_str(text)
        .map_err(|e| Error::parse("/", format!("invalid JSON: {e}")))?;
    parse_moment_map_value(&root, s.nvars(), s.plectic_degree(), "/")
}

/// Loads and parses a moment-map file.
pub fn load_moment_map(path: &Path, s: &NPlecticStructure) -> Result<MomentMap> {
    parse_moment_map_str(&read_file(path)?, s)
}

fn render_poly_value(p: &Poly) -> Value {
    Value::Array(
        p.terms()
            .map(|(exps, c)| {
                Value::Array(vec![
                    Value::Array(exps.iter().map(|&e| Value::from(e)).collect()),
                    Value::String(format_rat(c)),
                ])
            })
            .collect(),
    )
}

fn render_form_value(f: &PolyForm) -> Value {
    Value::Array(
        f.comps()
            .map(|(set, p)| {
                Value::Array(vec![
                    Value::Array(set.iter().map(|&i| Value::from(i as u64 + 1)).collect()),
                    render_poly_value(p),
                ])
            })
            .collect(),
    )
}

/// Renders a moment map as the document [`parse_moment_map_str`]
/// accepts; the round-trip is exact.
pub fn render_moment_map(map: &MomentMap) -> Value {
    let flavor = match map.flavor() {
        Flavor::Kernel => "weak",
        Flavor::Full => "homotopy",
    };
    let mut components = Vec::new();
    for k in map.cochain().arities().collect::<Vec<_>>() {
        if let Some(forms) = map.component(k) {
            let entries: Vec<Value> = forms
                .iter()
                .enumerate()
                .filter(|(_, f)| !f.is_zero())
                .map(|(j, f)| {
                    Value::Array(vec![Value::from(j as u64 + 1), render_form_value(f)])
                })
                .collect();
            components.push(serde_json::json!({ "arity": k, "entries": entries }));
        }
    }
    serde_json::json!({ "flavor": flavor, "components": components })
}

/// Serializes a moment map to pretty-printed text with a trailing
/// newline.
pub fn moment_map_text(map: &MomentMap) -> String {
    let mut text = serde_json::to_string_pretty(&render_moment_map(map))
        .expect("moment map serialization cannot fail");
    text.push('\n');
    text
}

/// Hex SHA-256 digest of a byte string.
pub fn hex_digest(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}
