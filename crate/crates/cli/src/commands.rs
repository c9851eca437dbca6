//! One function per subcommand: parse inputs, call the engine, shape the
//! JSON report.

use std::path::Path;

use serde_json::{json, Value};
use walland_core::rational::parse_rat;
use walland_core::stability::{heart_sign_check, HeartSign, PhaseValue};
use walland_core::trace::run_fuzz;
use walland_core::walls::{
    enumerate_candidate_walls, expected_moduli_dim, ext2_certificate, phase_bound_interval,
    simulate_destabilization_paths, LatticeBounds, Region,
};
use walland_core::walls::interval::transported_phase;
use walland_core::{central_charge, CharVec, StabPoint, SurfaceLattice};

use crate::output::{to_value, CliError, CliResult};
use crate::scene::{self, ext2_scene, SceneSpec};
use crate::svg;

pub fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

pub fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents)
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
}

pub fn load_surface(path: Option<&Path>) -> CliResult<SurfaceLattice> {
    match path {
        None => Ok(SurfaceLattice::projective_plane()),
        Some(p) => Ok(SurfaceLattice::from_json(&read_file(p)?)?),
    }
}

pub fn stab_point(s: &str, q: &str) -> CliResult<StabPoint> {
    Ok(StabPoint::new(parse_rat(s)?, parse_rat(q)?)?)
}

pub fn charge(lattice: &SurfaceLattice, ch: &CharVec, p: &StabPoint) -> CliResult<Value> {
    lattice.check_char(ch)?;
    let v = lattice.vtilde(ch)?;
    let z = central_charge(p, &v);
    let sign = heart_sign_check(p, &v);
    let mut out = json!({
        "character": to_value(ch),
        "vtilde": to_value(&v),
        "point": to_value(p),
        "Z": to_value(&z),
        "heart_sign": to_value(&sign),
    });
    if sign != HeartSign::Fails {
        let ph = PhaseValue::of_heart_charge(&z);
        out["exact_ray"] = to_value(&ph.exact_ray);
        out["phase_approx"] = json!(ph.approx);
        if let Some(e) = ph.exact {
            out["phase_exact"] = json!(e);
        }
    }
    Ok(out)
}

pub fn ext2(
    lattice: &SurfaceLattice,
    ch: &CharVec,
    p: &StabPoint,
    svg_out: Option<&Path>,
) -> CliResult<Value> {
    lattice.check_char(ch)?;
    let cert = ext2_certificate(p, ch, lattice)?;
    if let Some(path) = svg_out {
        let scene = ext2_scene(&cert)?.resolve()?;
        write_file(path, &svg::render(&scene))?;
    }
    let mut out = to_value(&cert);
    out["leaf_branch"] = json!(cert.leaf().branch.name());
    Ok(out)
}

pub fn phase_bounds(lattice: &SurfaceLattice, ch: &CharVec, p: &StabPoint, q: &StabPoint) -> CliResult<Value> {
    lattice.check_char(ch)?;
    let v = lattice.vtilde(ch)?;
    let interval = phase_bound_interval(p, q, &v)?;
    let at_q = transported_phase(p, q, &v)?;
    Ok(json!({
        "interval": to_value(&interval),
        "phase_at_q": to_value(&at_q),
        "phase_at_q_in_interval": interval.contains(&at_q),
        "approx": {
            "lo": interval.lo_phase().to_f64(),
            "hi": interval.hi_phase().to_f64(),
            "at_p": interval.phase_at_p.to_f64(),
            "at_q": at_q.to_f64(),
        },
    }))
}

pub fn region(
    segment: Option<(StabPoint, StabPoint)>,
    bbox: Option<&str>,
) -> CliResult<Region> {
    match (segment, bbox) {
        (Some((from, to)), None) => Ok(Region::Segment { from, to }),
        (None, Some(b)) => {
            let parts: Vec<_> = b.split(',').map(|x| parse_rat(x.trim())).collect::<Result<_, _>>()?;
            let [s_min, s_max, q_min, q_max]: [_; 4] = parts
                .try_into()
                .map_err(|_| CliError::Usage("--box takes s_min,s_max,q_min,q_max".into()))?;
            Ok(Region::Box {
                s_min,
                s_max,
                q_min,
                q_max,
            })
        }
        _ => Err(CliError::Usage(
            "give either --s/--q/--to-s/--to-q or --box".into(),
        )),
    }
}

pub fn walls(
    lattice: &SurfaceLattice,
    ch: &CharVec,
    region: &Region,
    rank_bound: u32,
    c1_bound: u32,
) -> CliResult<Value> {
    let walls = enumerate_candidate_walls(lattice, ch, region, rank_bound, c1_bound)?;
    Ok(json!({
        "character": to_value(ch),
        "region": to_value(region),
        "rank_bound": rank_bound,
        "c1_bound": c1_bound,
        "count": walls.len(),
        "walls": to_value(&walls),
    }))
}

pub fn simulate(
    lattice: &SurfaceLattice,
    ch: &CharVec,
    p: &StabPoint,
    q: &StabPoint,
    bounds: LatticeBounds,
) -> CliResult<Value> {
    let tree = simulate_destabilization_paths(lattice, p, q, ch, bounds)?;
    Ok(to_value(&tree))
}

pub fn dim(lattice: &SurfaceLattice, ch: &CharVec) -> CliResult<Value> {
    lattice.check_char(ch)?;
    let d = expected_moduli_dim(ch, lattice)?;
    Ok(json!({
        "character": to_value(ch),
        "expected_dim": d.to_string(),
    }))
}

pub fn supertrace_fuzz(n: u64, seed: u64) -> CliResult<Value> {
    let report = run_fuzz(n, seed)?;
    let out = to_value(&report);
    if report.violations > 0 {
        return Err(CliError::CheckFailed {
            message: format!("{} of {} checks failed", report.violations, report.checks),
            payload: out,
        });
    }
    Ok(out)
}

/// Seed for the fuzz run: `WALLAND_SEED` wins over the flag.
pub fn fuzz_seed(flag: u64, env: Option<String>) -> CliResult<u64> {
    match env {
        Some(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("WALLAND_SEED={s:?} is not an unsigned integer"))),
        None => Ok(flag),
    }
}

pub fn figure(name: Option<&str>, scene_file: Option<&Path>) -> CliResult<String> {
    let text = match (name, scene_file) {
        (Some(n), None) => scene::bundled(n)
            .ok_or_else(|| CliError::Usage(format!("unknown figure {n:?}")))?
            .to_string(),
        (None, Some(p)) => read_file(p)?,
        _ => return Err(CliError::Usage("give exactly one of --name and --scene".into())),
    };
    let spec = SceneSpec::from_json(&text)?;
    Ok(svg::render(&spec.resolve()?))
}

pub fn parse_char(lattice: &SurfaceLattice, s: Option<&str>) -> CliResult<CharVec> {
    let s = s.ok_or_else(|| CliError::Usage("--char is required".into()))?;
    Ok(lattice.parse_char(s)?)
}

pub fn require<'a>(name: &str, v: Option<&'a str>) -> CliResult<&'a str> {
    v.ok_or_else(|| CliError::Usage(format!("--{name} is required")))
}
