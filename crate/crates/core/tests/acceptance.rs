//! End-to-end acceptance run: one line per criterion, nonzero exit if any fails.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use gausslat::enumtau::mirrors_within_d0;
use gausslat::reduction::{prove_generation, thirteen_generator_check, verify_paths};
use gausslat::verify::{diagram_report, distance_report, lattice_report, property_report, SampleSizes};
use gausslat::Result;

type Check = fn() -> Result<(bool, String)>;

fn lattices() -> Result<(bool, String)> {
    let r = lattice_report(None)?;
    Ok((r.passed(), format!("kissing {} norm2 {} disc {:?}", r.bw16_kissing, r.bw16_norm2, r.disc_orders)))
}

fn diagram() -> Result<(bool, String)> {
    let r = diagram_report()?;
    Ok((
        r.passed(),
        format!("gram rank {} radical {} mismatches {} relation failures {}", r.gram_rank, r.radical_rank, r.gram_mismatches.len(), r.linear_relation_failures.len()),
    ))
}

fn symmetry() -> Result<(bool, String)> {
    let r = diagram_report()?;
    Ok((
        r.passed(),
        format!(
            "|Q+| {} |Q| {} transitive {} sigma^2=-i {} tau fixed {} pairs {} failures {}",
            r.qplus_order,
            r.q_order,
            r.q_transitive,
            r.sigma_squared_is_minus_i,
            r.tau_is_unique_fixed_point,
            r.relations.pairs,
            r.relations.failures.len()
        ),
    ))
}

fn distances() -> Result<(bool, String)> {
    let r = distance_report()?;
    Ok((
        r.passed(),
        format!("sinh2 d0 = {} + {}*sqrt2, d0 {:.4}, cutoffs {:.4} {:.4} {:.4}", r.sinh2_d0.a, r.sinh2_d0.b, r.d0, r.two_cosh2_2d0.approx, r.horo_v9, r.horo_l_inf),
    ))
}

fn near_tau() -> Result<(bool, String)> {
    let r = mirrors_within_d0()?;
    Ok((
        r.passed(),
        format!("{} classes, equality {}, all simple {}, tau on mirror {}, {} tuples", r.within_d0, r.all_equal_d0, r.all_simple, r.tau_on_mirror, r.tuples_visited),
    ))
}

fn generation() -> Result<(bool, String)> {
    let dir = std::env::temp_dir().join(format!("gausslat-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let path: PathBuf = dir.join("paths.ndjson");
    let (r, _) = prove_generation(Some(&path))?;
    let v = verify_paths(&path)?;
    let _ = std::fs::remove_dir_all(&dir);
    Ok((
        r.passed() && v.passed() && v.sha256 == r.path_sha256,
        format!(
            "{} roots, {} witnessed, stuck {} (S0 {} S1 {} S2 {}), unblocked {}, re-verified {}/{}",
            r.counts.total, r.witnessed, r.stuck, r.stuck_s0, r.stuck_s1, r.stuck_s2, r.unblocked, v.verified, v.records
        ),
    ))
}

fn thirteen() -> Result<(bool, String)> {
    let r = thirteen_generator_check()?;
    Ok((r.passed(), format!("{} octagons, {} words verified", r.octagons.len(), r.words_verified)))
}

fn properties() -> Result<(bool, String)> {
    let r = property_report(2024, SampleSizes::default())?;
    Ok((
        r.passed(),
        format!(
            "heisenberg {}/{} fail, R1R2 {}, triangle {}/{} fail, covering {} points {} fail",
            r.heisenberg_failures,
            r.heisenberg_pairs,
            r.r1r2_identity,
            r.triangle_failures,
            r.triangle_triples,
            r.covering.trials,
            r.covering.failures.len()
        ),
    ))
}

fn main() -> ExitCode {
    let checks: [(&str, Check); 8] = [
        ("lattice facts", lattices),
        ("diagram and Gram", diagram),
        ("symmetry", symmetry),
        ("distances", distances),
        ("enumeration near tau", near_tau),
        ("generation", generation),
        ("thirteen generators", thirteen),
        ("property suites", properties),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut ok = true;
    for (k, (name, f)) in checks.iter().enumerate() {
        if !filter.is_empty() && !filter.iter().any(|s| name.contains(s.as_str())) {
            continue;
        }
        let t = Instant::now();
        let (pass, detail) = match f() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        ok &= pass;
        println!("criterion {} [{}] {}: {} ({:.1}s)", k + 1, if pass { "PASS" } else { "FAIL" }, name, detail, t.elapsed().as_secs_f64());
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
