//! Command-line frontend: request parsing, dispatch, structured output and
//! the on-disk result cache.
//!
//! Every request is fully validated before any computation starts; results
//! are wrapped in an envelope carrying the request echo, warnings (e.g. a
//! violated characteristic assumption), timing and cache provenance. The
//! payload of a given request is deterministic — identical across runs and
//! across cache hits and misses — which `--verify-cache` enforces by
//! recomputing and byte-comparing.

use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

use crate::chevalley::StructureConstants;
use crate::error::{Error, Result};
use crate::highestweight::{decompose, ModularContext, DEFAULT_DIM_CAP};
use crate::incidence::{
    brute_force_h0, canonical_bidegree, cohomology, defining_section, is_ample, BiDegree,
    DefiningSection, IncidenceSpec, TableStatus, DEFAULT_ORACLE_CAP,
};
use crate::jantzen::{jantzen_gram_report, jantzen_sum, JANTZEN_CONVENTION};
use crate::parabolic::{
    b2_report, character_lattice_checked, compare_with_c4_table, is_exceptional, orbit_dimension,
    simple_exponents, stabilizer_exponents, CharacterLattice, ExponentVector,
    ParabolicStandardSpec,
};
use crate::rootsys::{characteristic_warning, NatInf, RootSystem, RootSystemSpec, Weight};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Tsv,
    Text,
}

#[derive(Clone, Debug, Serialize, Default)]
pub struct CacheOptions {
    /// Cache directory; from `--cache-dir` or the WEYLMOD_CACHE_DIR
    /// environment variable. No directory means no caching.
    pub dir: Option<PathBuf>,
    /// `--no-cache`: bypass both load and store.
    pub bypass: bool,
    /// `--verify-cache`: recompute on hits and fail hard on any difference.
    pub verify: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    Roots {
        system: String,
    },
    WeylDim {
        system: String,
        weight: String,
    },
    WeylChar {
        system: String,
        weight: String,
    },
    Simple {
        system: String,
        weight: String,
        p: u64,
        dump_action: bool,
    },
    Decompose {
        system: String,
        weight: String,
        p: u64,
    },
    Jantzen {
        system: String,
        weight: String,
        p: u64,
        expand: bool,
        check_gram: bool,
    },
    Stabilizer {
        system: String,
        weight: String,
        p: u64,
        check_paper_table: Option<String>,
    },
    Lattice {
        system: String,
        weight: String,
        p: u64,
    },
    VeryAmple {
        system: String,
        weight: String,
        chi: String,
        p: u64,
    },
    Incidence {
        n: u32,
        p: u64,
        r: u32,
        a: i64,
        b: i64,
        oracle: bool,
        swap: bool,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct CommandRequest {
    #[serde(flatten)]
    pub command: Command,
    pub format: Format,
    #[serde(skip)]
    pub cache: CacheOptions,
    pub dim_cap: u64,
    pub oracle_cap: u64,
}

impl CommandRequest {
    pub fn new(command: Command) -> Self {
        CommandRequest {
            command,
            format: Format::Json,
            cache: CacheOptions::default(),
            dim_cap: DEFAULT_DIM_CAP,
            oracle_cap: DEFAULT_ORACLE_CAP,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ResultEnvelope {
    pub request: Value,
    pub payload: Value,
    pub warnings: Vec<String>,
    pub timing_ms: u128,
    pub cache: &'static str,
    /// 0 on success; 4 when an incidence table is indeterminate.
    #[serde(skip)]
    pub exit_code: i32,
}

fn big_to_json(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) => json!(x),
        None => json!(v.to_string()),
    }
}

fn natinf_to_json(v: NatInf) -> Value {
    match v {
        NatInf::Finite(n) => json!(n),
        NatInf::Infinity => json!("inf"),
    }
}

fn build_system(name: &str) -> Result<Arc<RootSystem>> {
    let spec: RootSystemSpec = name.parse()?;
    Ok(Arc::new(RootSystem::build(spec)?))
}

/// Deterministic cache key for the cacheable subcommands.
fn cache_key(req: &CommandRequest) -> Option<String> {
    let mk = |parts: &[String]| {
        let mut s = parts.join("-");
        s = s.replace(',', ".");
        s.retain(|c| c.is_ascii_alphanumeric() || c == '.' || c == '-' || c == '_');
        Some(s)
    };
    match &req.command {
        Command::Simple {
            system,
            weight,
            p,
            dump_action,
        } => mk(&[
            "simple".into(),
            system.clone(),
            weight.clone(),
            format!("p{p}"),
            format!("cap{}", req.dim_cap),
            format!("dump{}", u8::from(*dump_action)),
        ]),
        Command::Decompose { system, weight, p } => mk(&[
            "decompose".into(),
            system.clone(),
            weight.clone(),
            format!("p{p}"),
            format!("cap{}", req.dim_cap),
        ]),
        Command::Jantzen {
            system,
            weight,
            p,
            expand,
            check_gram,
        } => mk(&[
            "jantzen".into(),
            system.clone(),
            weight.clone(),
            format!("p{p}"),
            format!("cap{}", req.dim_cap),
            format!("x{}g{}", u8::from(*expand), u8::from(*check_gram)),
        ]),
        Command::Stabilizer {
            system,
            weight,
            p,
            check_paper_table,
        } => mk(&[
            "stabilizer".into(),
            system.clone(),
            weight.clone(),
            format!("p{p}"),
            format!("cap{}", req.dim_cap),
            format!("t{}", check_paper_table.clone().unwrap_or_default()),
        ]),
        _ => None,
    }
}

/// Advisory lock guard for the cache directory.
struct DirLock {
    path: PathBuf,
}

impl DirLock {
    fn acquire(dir: &std::path::Path) -> Option<DirLock> {
        let path = dir.join(".weylmod.lock");
        for _ in 0..100 {
            match std::fs::OpenOptions::new()
                .write(true)
                .create_new(true)
                .open(&path)
            {
                Ok(_) => return Some(DirLock { path }),
                Err(_) => {
                    // Break stale locks.
                    if let Ok(meta) = std::fs::metadata(&path) {
                        if let Ok(modified) = meta.modified() {
                            if modified
                                .elapsed()
                                .map(|e| e.as_secs() > 30)
                                .unwrap_or(false)
                            {
                                let _ = std::fs::remove_file(&path);
                                continue;
                            }
                        }
                    }
                    std::thread::sleep(std::time::Duration::from_millis(10));
                }
            }
        }
        None
    }
}

impl Drop for DirLock {
    fn drop(&mut self) {
        let _ = std::fs::remove_file(&self.path);
    }
}

fn cache_load(dir: &std::path::Path, key: &str, warnings: &mut Vec<String>) -> Option<Value> {
    let path = dir.join(format!("{key}.json"));
    match std::fs::read_to_string(&path) {
        Ok(text) => match serde_json::from_str::<Value>(&text) {
            Ok(v) => Some(v),
            Err(_) => {
                warnings.push(format!(
                    "cache entry {} is corrupted; discarding and recomputing",
                    path.display()
                ));
                let _ = std::fs::remove_file(&path);
                None
            }
        },
        Err(_) => None,
    }
}

fn cache_store(dir: &std::path::Path, key: &str, payload: &Value) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let _lock = DirLock::acquire(dir);
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(serde_json::to_string_pretty(payload)?.as_bytes())?;
    tmp.persist(dir.join(format!("{key}.json")))
        .map_err(|e| Error::Io(e.error))?;
    Ok(())
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Internal(format!("serialization failure: {e}"))
    }
}

/// Execute a fully parsed request.
pub fn run(req: &CommandRequest) -> Result<ResultEnvelope> {
    let start = Instant::now();
    let mut warnings = Vec::new();
    let mut provenance = "uncached";

    let key = cache_key(req);
    let cache_dir = if req.cache.bypass {
        None
    } else {
        req.cache.dir.clone()
    };
    let mut payload: Option<Value> = None;
    if let (Some(dir), Some(key)) = (cache_dir.as_deref(), key.as_deref()) {
        if let Some(hit) = cache_load(dir, key, &mut warnings) {
            if req.cache.verify {
                let fresh = compute_payload(req, &mut warnings)?;
                let fresh_text = serde_json::to_string(&fresh)?;
                let hit_text = serde_json::to_string(&hit)?;
                if fresh_text != hit_text {
                    return Err(Error::Internal(format!(
                        "cache verification failed for key {key}: stored and recomputed \
                         payloads differ"
                    )));
                }
                provenance = "hit-verified";
                payload = Some(fresh);
            } else {
                provenance = "hit";
                payload = Some(hit);
            }
        }
    }
    let payload = match payload {
        Some(p) => p,
        None => {
            let fresh = compute_payload(req, &mut warnings)?;
            if let (Some(dir), Some(key)) = (cache_dir.as_deref(), key.as_deref()) {
                if let Err(e) = cache_store(dir, key, &fresh) {
                    warnings.push(format!("cache store failed: {e}"));
                } else if provenance == "uncached" {
                    provenance = "miss-stored";
                }
            }
            fresh
        }
    };

    let exit_code = if payload.get("status").and_then(Value::as_str) == Some("indeterminate") {
        4
    } else {
        0
    };
    Ok(ResultEnvelope {
        request: serde_json::to_value(req)?,
        payload,
        warnings,
        timing_ms: start.elapsed().as_millis(),
        cache: provenance,
        exit_code,
    })
}

fn compute_payload(req: &CommandRequest, warnings: &mut Vec<String>) -> Result<Value> {
    match &req.command {
        Command::Roots { system } => roots_payload(system),
        Command::WeylDim { system, weight } => weyl_dim_payload(system, weight),
        Command::WeylChar { system, weight } => weyl_char_payload(system, weight),
        Command::Simple {
            system,
            weight,
            p,
            dump_action,
        } => simple_payload(system, weight, *p, *dump_action, req.dim_cap, warnings),
        Command::Decompose { system, weight, p } => {
            decompose_payload(system, weight, *p, req.dim_cap, warnings)
        }
        Command::Jantzen {
            system,
            weight,
            p,
            expand,
            check_gram,
        } => jantzen_payload(
            system,
            weight,
            *p,
            *expand,
            *check_gram,
            req.dim_cap,
            warnings,
        ),
        Command::Stabilizer {
            system,
            weight,
            p,
            check_paper_table,
        } => stabilizer_payload(
            system,
            weight,
            *p,
            check_paper_table.as_deref(),
            req.dim_cap,
            warnings,
        ),
        Command::Lattice { system, weight, p } => {
            lattice_payload(system, weight, *p, req.dim_cap, warnings)
        }
        Command::VeryAmple {
            system,
            weight,
            chi,
            p,
        } => very_ample_payload(system, weight, chi, *p, req.dim_cap, warnings),
        Command::Incidence {
            n,
            p,
            r,
            a,
            b,
            oracle,
            swap,
        } => incidence_payload(*n, *p, *r, *a, *b, *oracle, *swap, req.oracle_cap),
    }
}

fn push_char_warning(spec: RootSystemSpec, p: u64, warnings: &mut Vec<String>) {
    if let Some(w) = characteristic_warning(spec, p) {
        warnings.push(w);
    }
}

fn weight_json(w: &Weight) -> Value {
    json!(w.to_string())
}

fn roots_payload(system: &str) -> Result<Value> {
    let rs = build_system(system)?;
    Ok(json!({
        "system": rs.spec.to_string(),
        "rank": rs.rank(),
        "cartan": rs.cartan,
        "positive_roots": rs.positive_roots.iter().map(|r| r.label()).collect::<Vec<_>>(),
        "count": rs.positive_roots.len(),
        "half_norms": rs.positive_roots.iter().map(|r| r.half_norm).collect::<Vec<_>>(),
    }))
}

fn weyl_dim_payload(system: &str, weight: &str) -> Result<Value> {
    let rs = build_system(system)?;
    let lam = rs.parse_weight(weight)?;
    let dim = rs.weyl_dimension(&lam)?;
    Ok(json!({
        "system": rs.spec.to_string(),
        "lambda": weight_json(&lam),
        "dim": big_to_json(&dim),
    }))
}

fn weyl_char_payload(system: &str, weight: &str) -> Result<Value> {
    let rs = build_system(system)?;
    let lam = rs.parse_weight(weight)?;
    let dom = rs.dominant_multiplicities(&lam)?;
    let full = rs.weight_multiplicities(&lam)?;
    let total: i64 = full.values().sum();
    Ok(json!({
        "system": rs.spec.to_string(),
        "lambda": weight_json(&lam),
        "dim": total,
        "dominant_multiplicities": dom.iter()
            .map(|(w, m)| json!({"weight": weight_json(w), "multiplicity": m}))
            .collect::<Vec<_>>(),
        "weight_count": full.len(),
    }))
}

fn simple_payload(
    system: &str,
    weight: &str,
    p: u64,
    dump_action: bool,
    dim_cap: u64,
    warnings: &mut Vec<String>,
) -> Result<Value> {
    let rs = build_system(system)?;
    push_char_warning(rs.spec, p, warnings);
    let lam = rs.parse_weight(weight)?;
    let mut ctx = ModularContext::new(rs.clone(), p, dim_cap)?;
    let pair = ctx.get(&lam)?;
    let (module, simple) = (&pair.0, &pair.1);
    let weights: Vec<Value> = module
        .spaces
        .iter()
        .zip(&simple.spaces)
        .map(|(v, l)| {
            json!({
                "weight": weight_json(&v.weight),
                "dim_weyl": v.dim,
                "dim_simple": l.dim,
            })
        })
        .collect();
    let mut payload = json!({
        "system": rs.spec.to_string(),
        "lambda": weight_json(&lam),
        "p": p,
        "dim_weyl": module.dim,
        "dim": simple.dim,
        "weights": weights,
    });
    if dump_action {
        let mut actions = Vec::new();
        for &(src, i, m) in module.f_keys() {
            let f = module.f_action(src, i, m).unwrap();
            let rows: Vec<Vec<String>> = (0..f.rows)
                .map(|r| f.row(r).iter().map(|x| x.to_string()).collect())
                .collect();
            actions.push(json!({
                "source_weight": weight_json(&module.spaces[src].weight),
                "simple_root": i,
                "power": m,
                "matrix": rows,
            }));
        }
        payload["lowering_actions"] = json!(actions);
    }
    Ok(payload)
}

fn decompose_payload(
    system: &str,
    weight: &str,
    p: u64,
    dim_cap: u64,
    warnings: &mut Vec<String>,
) -> Result<Value> {
    let rs = build_system(system)?;
    push_char_warning(rs.spec, p, warnings);
    let lam = rs.parse_weight(weight)?;
    let mut ctx = ModularContext::new(rs.clone(), p, dim_cap)?;
    let factors = decompose(&mut ctx, &lam)?;
    let rows: Vec<Value> = factors
        .iter()
        .map(|(mu, c)| {
            let dim = ctx.get(mu).map(|pair| pair.1.dim).unwrap_or(0);
            json!({"weight": weight_json(mu), "multiplicity": c, "dim_simple": dim})
        })
        .collect();
    Ok(json!({
        "system": rs.spec.to_string(),
        "lambda": weight_json(&lam),
        "p": p,
        "dim_weyl": big_to_json(&rs.weyl_dimension(&lam)?),
        "factors": rows,
    }))
}

fn jantzen_payload(
    system: &str,
    weight: &str,
    p: u64,
    expand: bool,
    check_gram: bool,
    dim_cap: u64,
    warnings: &mut Vec<String>,
) -> Result<Value> {
    let rs = build_system(system)?;
    push_char_warning(rs.spec, p, warnings);
    let lam = rs.parse_weight(weight)?;
    let sum = jantzen_sum(&rs, &lam, p)?;
    let mut payload = json!({
        "system": rs.spec.to_string(),
        "lambda": weight_json(&lam),
        "p": p,
        "terms": sum.terms().iter()
            .map(|(w, c)| json!({"weight": weight_json(w), "coefficient": c}))
            .collect::<Vec<_>>(),
        "convention": JANTZEN_CONVENTION,
    });
    if expand {
        let expansion = sum.weight_expansion(&rs)?;
        payload["weight_expansion"] = Value::Object(
            expansion
                .iter()
                .map(|(w, c)| (w.to_string(), json!(c)))
                .collect(),
        );
    }
    if check_gram {
        let mut ctx = ModularContext::new(rs.clone(), p, dim_cap)?;
        let pair = ctx.get(&lam)?;
        let report = jantzen_gram_report(&pair.0, p)?;
        payload["gram_check"] = json!({
            "ok": report.ok,
            "deltas": Value::Object(
                report.deltas.iter().map(|(w, d)| (w.to_string(), json!(d))).collect(),
            ),
            "gram_valuations": Value::Object(
                report.gram.iter().map(|(w, v)| (w.to_string(), json!(v))).collect(),
            ),
        });
    }
    Ok(payload)
}

fn full_exponent_data(
    rs: &Arc<RootSystem>,
    lam: &Weight,
    p: u64,
    dim_cap: u64,
) -> Result<(ExponentVector, u64)> {
    let mut ctx = ModularContext::new(rs.clone(), p, dim_cap)?;
    let pair = ctx.get(lam)?;
    let sc = StructureConstants::compute(rs.clone());
    let ev = stabilizer_exponents(&pair.0, &pair.1, &sc)?;
    Ok((ev, pair.1.dim))
}

fn stabilizer_payload(
    system: &str,
    weight: &str,
    p: u64,
    check_table: Option<&str>,
    dim_cap: u64,
    warnings: &mut Vec<String>,
) -> Result<Value> {
    let rs = build_system(system)?;
    push_char_warning(rs.spec, p, warnings);
    let lam = rs.parse_weight(weight)?;
    let (ev, l_dim) = full_exponent_data(&rs, &lam, p, dim_cap)?;
    let closed_form = simple_exponents(&rs, &lam, p)?;
    let embedding = if l_dim >= 2 { Some(l_dim - 1) } else { None };
    let mut payload = json!({
        "system": rs.spec.to_string(),
        "lambda": weight_json(&lam),
        "p": p,
        "exponents": ev.labeled(&rs).iter()
            .map(|(label, e)| json!({"root": label, "n": natinf_to_json(*e)}))
            .collect::<Vec<_>>(),
        "simple_exponents_closed_form": closed_form.iter().map(|&e| natinf_to_json(e)).collect::<Vec<_>>(),
        "exceptional": is_exceptional(&rs, &ev),
        "orbit_dimension": orbit_dimension(&ev),
        "dim_simple": l_dim,
        "embedding_dimension": embedding,
    });
    if let Some(table) = check_table {
        match table {
            "C4" => {
                let cmp = compare_with_c4_table(&rs, &ev)?;
                payload["table_check"] = json!({
                    "table": "C4",
                    "match": cmp.matches,
                    "rows": cmp.rows.iter().map(|(label, computed, reference)| json!({
                        "root": label,
                        "computed": natinf_to_json(*computed),
                        "reference": natinf_to_json(*reference),
                    })).collect::<Vec<_>>(),
                });
            }
            "B2" => {
                let report = b2_report(&rs, &ev)?;
                payload["table_check"] = json!({
                    "table": "B2",
                    "simple_unordered_match": report.simple_unordered_match,
                    "nonsimple_match": report.nonsimple_match,
                    "label_note": report.label_note,
                });
            }
            other => {
                return Err(Error::InvalidInput(format!(
                    "no embedded reference table named '{other}' (available: C4, B2)"
                )))
            }
        }
    }
    Ok(payload)
}

fn lattice_payload(
    system: &str,
    weight: &str,
    p: u64,
    dim_cap: u64,
    warnings: &mut Vec<String>,
) -> Result<Value> {
    let rs = build_system(system)?;
    push_char_warning(rs.spec, p, warnings);
    let lam = rs.parse_weight(weight)?;
    let (ev, _) = full_exponent_data(&rs, &lam, p, dim_cap)?;
    let lattice = character_lattice_checked(&rs, &ev, p)?;
    Ok(lattice_json(&rs, &lam, p, &lattice))
}

fn lattice_json(rs: &RootSystem, lam: &Weight, p: u64, lattice: &CharacterLattice) -> Value {
    json!({
        "system": rs.spec.to_string(),
        "lambda": weight_json(lam),
        "p": p,
        "generators": lattice.generators.iter().map(|(i, n, pw)| json!({
            "simple_root_index": i,
            "simple_root": rs.simple_root(*i).label(),
            "thickening": n,
            "p_power": big_to_json(pw),
        })).collect::<Vec<_>>(),
        "membership": "coordinates on listed fundamental weights divisible by the p-power; all others zero",
    })
}

fn very_ample_payload(
    system: &str,
    weight: &str,
    chi_str: &str,
    p: u64,
    dim_cap: u64,
    warnings: &mut Vec<String>,
) -> Result<Value> {
    let rs = build_system(system)?;
    push_char_warning(rs.spec, p, warnings);
    let lam = rs.parse_weight(weight)?;
    let chi = rs.parse_weight(chi_str)?;
    let (ev, _) = full_exponent_data(&rs, &lam, p, dim_cap)?;
    // Refuses exceptional parabolics before classifying characters.
    let lattice = character_lattice_checked(&rs, &ev, p)?;
    let spec = ParabolicStandardSpec::from_simple_exponents(&ev.simple_part(&rs));
    let very_ample = crate::parabolic::is_very_ample(&rs, &chi, &spec, p)?;
    let coefficients = lattice
        .coefficients(&chi)
        .map(|cs| cs.iter().map(big_to_json).collect::<Vec<_>>());
    Ok(json!({
        "system": rs.spec.to_string(),
        "lambda": weight_json(&lam),
        "chi": weight_json(&chi),
        "p": p,
        "very_ample": very_ample,
        "coefficients": coefficients,
    }))
}

#[allow(clippy::too_many_arguments)]
fn incidence_payload(
    n: u32,
    p: u64,
    r: u32,
    a: i64,
    b: i64,
    oracle: bool,
    swap: bool,
    oracle_cap: u64,
) -> Result<Value> {
    let spec = IncidenceSpec::new(n, p, r)?;
    // With --swap the variety is presented as Z(Σ x_i y_i^q); by the x↔y
    // symmetry its (a, b) cohomology is the (b, a) cohomology of Z(s̃).
    let compute_d = if swap {
        BiDegree { a: b, b: a }
    } else {
        BiDegree { a, b }
    };
    let table = cohomology(spec, compute_d, oracle_cap)?;
    let canonical = canonical_bidegree(spec)?;
    let canonical = if swap {
        BiDegree {
            a: canonical.b,
            b: canonical.a,
        }
    } else {
        canonical
    };
    let section = DefiningSection {
        swapped: swap,
        ..defining_section(spec)?
    };
    let mut dims = serde_json::Map::new();
    for (i, v) in &table.dims {
        dims.insert(format!("h{i}"), big_to_json(v));
    }
    let status = match table.status {
        TableStatus::ClosedForm => "closed-form",
        TableStatus::Oracle => "oracle",
        TableStatus::Indeterminate => "indeterminate",
    };
    let mut payload = json!({
        "spec": {"n": n, "p": p, "r": r, "q": spec.q()?, "swap": swap},
        "bidegree": [a, b],
        "section": section.to_string(),
        "table": Value::Object(dims),
        "status": status,
        "canonical": [canonical.a, canonical.b],
        "ample": is_ample(compute_d),
    });
    if table.status == TableStatus::Indeterminate {
        payload["bounds"] = json!(table
            .bounds
            .iter()
            .map(|(i, lo, hi)| json!({"degree": i, "lower": big_to_json(lo), "upper": big_to_json(hi)}))
            .collect::<Vec<_>>());
    }
    if oracle {
        let h0 = brute_force_h0(spec, compute_d, oracle_cap)?;
        let matches = h0 == table.h(0);
        if !matches {
            return Err(Error::Internal(format!(
                "brute-force h⁰ = {h0} disagrees with the closed form {}",
                table.h(0)
            )));
        }
        payload["oracle_h0"] = big_to_json(&h0);
        payload["oracle_match"] = json!(true);
    }
    Ok(payload)
}

/// Render an envelope in the requested output format.
pub fn render(envelope: &ResultEnvelope, format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(envelope)?),
        Format::Tsv => Ok(render_tsv(&envelope.payload)),
        Format::Text => Ok(render_text(envelope)),
    }
}

fn render_tsv(payload: &Value) -> String {
    // The stabilizer table gets its documented two-column form; everything
    // else is flattened to key<TAB>value rows.
    let mut out = String::new();
    if let Some(rows) = payload.get("exponents").and_then(Value::as_array) {
        out.push_str("root\tn\n");
        for row in rows {
            let root = row.get("root").and_then(Value::as_str).unwrap_or("?");
            let n = row.get("n").map(value_scalar).unwrap_or_default();
            out.push_str(&format!("{root}\t{n}\n"));
        }
        return out;
    }
    let mut rows = Vec::new();
    flatten("", payload, &mut rows);
    for (k, v) in rows {
        out.push_str(&format!("{k}\t{v}\n"));
    }
    out
}

fn value_scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, v2) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, v2, out);
            }
        }
        Value::Array(items) => {
            for (i, v2) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), v2, out);
            }
        }
        scalar => out.push((prefix.to_string(), value_scalar(scalar))),
    }
}

fn render_text(envelope: &ResultEnvelope) -> String {
    let mut out = String::new();
    let mut rows = Vec::new();
    flatten("", &envelope.payload, &mut rows);
    for (k, v) in rows {
        out.push_str(&format!("{k}: {v}\n"));
    }
    for w in &envelope.warnings {
        out.push_str(&format!("warning: {w}\n"));
    }
    out.push_str(&format!(
        "cache: {}\ntime: {} ms\n",
        envelope.cache, envelope.timing_ms
    ));
    out
}

/// Round-trip helper used by tests and by `--verify-cache`: stable textual
/// form of a payload.
pub fn canonical_payload_text(payload: &Value) -> Result<String> {
    Ok(serde_json::to_string(payload)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn envelope_for(command: Command) -> ResultEnvelope {
        run(&CommandRequest::new(command)).unwrap()
    }

    #[test]
    fn simple_c4_dim_sixteen() {
        let env = envelope_for(Command::Simple {
            system: "C4".into(),
            weight: "0001".into(),
            p: 2,
            dump_action: false,
        });
        assert_eq!(env.payload["dim"], json!(16));
        assert_eq!(env.payload["dim_weyl"], json!(42));
        assert!(env.warnings.iter().any(|w| w.contains("characteristic")));
        assert_eq!(env.exit_code, 0);
    }

    #[test]
    fn invalid_family_is_invalid_input() {
        let err = run(&CommandRequest::new(Command::Roots {
            system: "Z9".into(),
        }))
        .unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn stabilizer_c4_with_table_check() {
        let env = envelope_for(Command::Stabilizer {
            system: "C4".into(),
            weight: "0001".into(),
            p: 2,
            check_paper_table: Some("C4".into()),
        });
        assert_eq!(env.payload["table_check"]["match"], json!(true));
        assert_eq!(env.payload["orbit_dimension"], json!(10));
        assert_eq!(env.payload["embedding_dimension"], json!(15));
        assert_eq!(env.payload["exceptional"], json!(true));
        let rows = env.payload["exponents"].as_array().unwrap();
        assert_eq!(rows.len(), 16);
    }

    #[test]
    fn lattice_refuses_exceptional_with_exit_three() {
        let err = run(&CommandRequest::new(Command::Lattice {
            system: "C4".into(),
            weight: "0001".into(),
            p: 2,
        }))
        .unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn lattice_incidence_spec() {
        let env = envelope_for(Command::Lattice {
            system: "A3".into(),
            weight: "1,0,4".into(),
            p: 2,
        });
        let gens = env.payload["generators"].as_array().unwrap();
        assert_eq!(gens.len(), 2);
        assert_eq!(gens[0]["p_power"], json!(1));
        assert_eq!(gens[1]["p_power"], json!(4));
    }

    #[test]
    fn very_ample_round_trip() {
        let env = envelope_for(Command::VeryAmple {
            system: "A3".into(),
            weight: "1,0,4".into(),
            chi: "2,0,8".into(),
            p: 2,
        });
        assert_eq!(env.payload["very_ample"], json!(true));
        let err = run(&CommandRequest::new(Command::VeryAmple {
            system: "A3".into(),
            weight: "1,0,4".into(),
            chi: "1,0,2".into(),
            p: 2,
        }))
        .unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn incidence_json_shape() {
        let env = envelope_for(Command::Incidence {
            n: 2,
            p: 3,
            r: 1,
            a: 3,
            b: 1,
            oracle: true,
            swap: false,
        });
        assert_eq!(env.payload["table"]["h0"], json!(29));
        assert_eq!(env.payload["oracle_match"], json!(true));
        assert_eq!(env.payload["canonical"], json!([0, -2]));
        assert_eq!(env.payload["ample"], json!(true));
        assert_eq!(env.payload["status"], json!("closed-form"));
    }

    #[test]
    fn incidence_indeterminate_exit_code() {
        let mut req = CommandRequest::new(Command::Incidence {
            n: 2,
            p: 2,
            r: 1,
            a: -3,
            b: 1,
            oracle: false,
            swap: false,
        });
        req.oracle_cap = 1;
        let env = run(&req).unwrap();
        assert_eq!(env.exit_code, 4);
        assert_eq!(env.payload["status"], json!("indeterminate"));
        assert!(env.payload["bounds"].is_array());
    }

    #[test]
    fn incidence_swap_relabels() {
        let plain = envelope_for(Command::Incidence {
            n: 2,
            p: 2,
            r: 1,
            a: 2,
            b: 1,
            oracle: false,
            swap: false,
        });
        let swapped = envelope_for(Command::Incidence {
            n: 2,
            p: 2,
            r: 1,
            a: 1,
            b: 2,
            oracle: false,
            swap: true,
        });
        assert_eq!(plain.payload["table"], swapped.payload["table"]);
        assert!(swapped.payload["section"]
            .as_str()
            .unwrap()
            .contains("y0^2"));
    }

    #[test]
    fn cache_roundtrip_and_verification() {
        let dir = tempfile::tempdir().unwrap();
        let mut req = CommandRequest::new(Command::Simple {
            system: "B2".into(),
            weight: "10".into(),
            p: 2,
            dump_action: false,
        });
        req.cache = CacheOptions {
            dir: Some(dir.path().to_path_buf()),
            bypass: false,
            verify: false,
        };
        let first = run(&req).unwrap();
        assert_eq!(first.cache, "miss-stored");
        let second = run(&req).unwrap();
        assert_eq!(second.cache, "hit");
        assert_eq!(
            canonical_payload_text(&first.payload).unwrap(),
            canonical_payload_text(&second.payload).unwrap()
        );
        // Verified hit recomputes and compares.
        req.cache.verify = true;
        let third = run(&req).unwrap();
        assert_eq!(third.cache, "hit-verified");
        // Corruption is discarded with a warning and recomputed.
        let entry = std::fs::read_dir(dir.path())
            .unwrap()
            .filter_map(|e| e.ok())
            .find(|e| e.path().extension().map(|x| x == "json").unwrap_or(false))
            .unwrap();
        std::fs::write(entry.path(), b"{ not json").unwrap();
        req.cache.verify = false;
        let fourth = run(&req).unwrap();
        assert!(fourth.warnings.iter().any(|w| w.contains("corrupted")));
        assert_eq!(
            canonical_payload_text(&fourth.payload).unwrap(),
            canonical_payload_text(&first.payload).unwrap()
        );
        // --no-cache bypasses the store entirely.
        req.cache.bypass = true;
        let fifth = run(&req).unwrap();
        assert_eq!(fifth.cache, "uncached");
    }

    #[test]
    fn tsv_stabilizer_table_format() {
        let env = envelope_for(Command::Stabilizer {
            system: "B2".into(),
            weight: "10".into(),
            p: 2,
            check_paper_table: None,
        });
        let tsv = render(&env, Format::Tsv).unwrap();
        let lines: Vec<&str> = tsv.lines().collect();
        assert_eq!(lines[0], "root\tn");
        assert!(lines.contains(&"11\t1"));
        assert!(lines.contains(&"01\tinf"));
    }

    #[test]
    fn payloads_are_deterministic() {
        let req = CommandRequest::new(Command::Jantzen {
            system: "B2".into(),
            weight: "1,0".into(),
            p: 2,
            expand: true,
            check_gram: true,
        });
        let a = run(&req).unwrap();
        let b = run(&req).unwrap();
        assert_eq!(
            canonical_payload_text(&a.payload).unwrap(),
            canonical_payload_text(&b.payload).unwrap()
        );
        assert_eq!(a.payload["gram_check"]["ok"], json!(true));
    }

    #[test]
    fn weyl_char_and_dim_payloads() {
        let env = envelope_for(Command::WeylDim {
            system: "C4".into(),
            weight: "0001".into(),
        });
        assert_eq!(env.payload["dim"], json!(42));
        let env = envelope_for(Command::WeylChar {
            system: "A2".into(),
            weight: "11".into(),
        });
        assert_eq!(env.payload["dim"], json!(8));
    }
}
