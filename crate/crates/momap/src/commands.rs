//! The operations behind the CLI verbs: each takes a parsed scene
//! (plus a map file where applicable), runs the library, and produces
//! a [`Report`] whose verdict carries the exit code.

use std::path::Path;

use num_traits::Zero;

use crate::combi::subsets;
use crate::complexes::{Ctx, Flavor};
use crate::lie::{cartan_cocycle, ce_cohomology, LieKernel, Multivector};
use crate::linalg::{format_rat, Rat};
use crate::moment::{
    construct_homotopy, construct_weak, equivariance_check, equivariantize, existence_report,
    strict_extension, symplectic_defects, verify_homotopy, verify_weak, HomotopyOutcome,
    MomentMap, ObstructionStatus, VerifyReport,
};
use crate::report::{Report, Verdict};
use crate::scene::{moment_map_text, Scene};
use crate::{Error, Result};

/// Structural validation: Jacobi identity, closedness and
/// nondegeneracy of the structure form (at the basepoint and at the
/// scene's sample points), and both action axioms.  Exit 0 exactly
/// when every present section passes; absent sections are noted and
/// skipped.
pub fn cmd_validate(scene: &Scene) -> Report {
    let mut report = Report::new("validate", scene.digest.clone());
    let g = &scene.algebra;

    report.section("lie algebra");
    report.line("dimension", g.dim().to_string());
    match g.jacobi_check() {
        None => {
            report.check("jacobi identity", "holds", true);
        }
        Some((i, j, k)) => {
            report.check(
                "jacobi identity",
                format!("fails on (e{}, e{}, e{})", i + 1, j + 1, k + 1),
                false,
            );
        }
    }

    report.section("structure");
    match &scene.structure {
        None => {
            report.line("status", "not present (skipped)");
        }
        Some(s) => {
            report.line(
                "shape",
                format!(
                    "{}-plectic form on R^{} ({} total degree)",
                    s.plectic_degree(),
                    s.nvars(),
                    s.plectic_degree() + 1
                ),
            );
            report.check(
                "closed",
                if s.omega().ext_d().is_zero() {
                    "d(omega) = 0".to_string()
                } else {
                    format!("d(omega) = {}", s.omega().ext_d().render())
                },
                s.omega().ext_d().is_zero(),
            );
            let base: Vec<String> = s.basepoint().iter().map(format_rat).collect();
            report.check(
                "nondegenerate at basepoint",
                format!("({})", base.join(", ")),
                s.nondegeneracy_check(s.basepoint()).is_ok(),
            );
            for point in scene.sample_points() {
                let rendered: Vec<String> = point.iter().map(format_rat).collect();
                let ok = s.nondegeneracy_check(&point).is_ok();
                report.check(
                    "nondegenerate at sample",
                    format!("({})", rendered.join(", ")),
                    ok,
                );
            }
        }
    }

    report.section("action");
    match (&scene.action, &scene.structure) {
        (Some(action), Some(s)) => {
            let check = crate::action::validate_action(action, s);
            if check.bracket_failures.is_empty() {
                report.check("bracket relations", "all hold", true);
            }
            for f in &check.bracket_failures {
                report.check(
                    "bracket relation",
                    format!(
                        "[v{}, v{}] misses v_[e{}, e{}] by {}",
                        f.i + 1,
                        f.j + 1,
                        f.i + 1,
                        f.j + 1,
                        f.residual.render()
                    ),
                    false,
                );
            }
            if check.preservation_failures.is_empty() {
                report.check("structure preservation", "every generator", true);
            }
            for f in &check.preservation_failures {
                report.check(
                    "structure preservation",
                    format!(
                        "L_v{}(omega) = {}",
                        f.generator + 1,
                        f.residual.render()
                    ),
                    false,
                );
            }
        }
        (Some(_), None) => {
            report.check("status", "action present without a structure", false);
        }
        (None, _) => {
            report.line("status", "not present (skipped)");
        }
    }

    report.verdict = if report.all_checks_pass() {
        Verdict::Pass
    } else {
        Verdict::Invalid
    };
    report
}

/// Builds the validated context behind most commands, or the failed
/// validation report to return as is.
fn prepare(scene: &Scene, command: &str) -> Result<std::result::Result<Ctx, Report>> {
    let mut validation = cmd_validate(scene);
    if validation.verdict != Verdict::Pass {
        validation.command = command.into();
        return Ok(Err(validation));
    }
    let (action, structure) = scene.action_and_structure()?;
    let ctx = Ctx::new(action, structure)?;
    Ok(Ok(ctx))
}

fn render_point(point: &[Rat]) -> String {
    let rendered: Vec<String> = point.iter().map(format_rat).collect();
    format!("({})", rendered.join(", "))
}

/// Domain basis label at one arity: the kernel cycle or the subset.
fn domain_label(ctx: &Ctx, flavor: Flavor, k: usize, j: usize) -> String {
    match flavor {
        Flavor::Kernel => ctx.kernel(k).basis_multivector(j).render(),
        Flavor::Full => {
            let dim = ctx.algebra().dim();
            Multivector::basis(dim, &subsets(dim, k)[j]).render()
        }
    }
}

fn push_map_section(report: &mut Report, title: &str, ctx: &Ctx, map: &MomentMap) {
    report.section(title);
    let flavor_label = match map.flavor() {
        Flavor::Kernel => "weak",
        Flavor::Full => "homotopy",
    };
    report.line("flavor", flavor_label);
    let mut any = false;
    for k in map.cochain().arities().collect::<Vec<_>>() {
        for (j, f) in map.component_or_zero(ctx, k).iter().enumerate() {
            any = true;
            report.line(
                format!("f_{k}({})", domain_label(ctx, map.flavor(), k, j)),
                f.render(),
            );
        }
    }
    if !any {
        report.line("components", "all zero");
    }
}

fn push_verify_section(report: &mut Report, ctx: &Ctx, map: &MomentMap, check: &VerifyReport) {
    report.section("verification");
    report.line("equations checked", check.checked.to_string());
    if check.pass() {
        report.check("all residuals", "0", true);
    } else {
        for f in &check.failures {
            report.check(
                format!(
                    "residual at arity {}, {}",
                    f.arity,
                    domain_label(ctx, map.flavor(), f.arity, f.index)
                ),
                f.residual.render(),
                false,
            );
        }
    }
}

/// Writes a moment-map file when a path was given, recording either
/// the path or the inline document in the report.
fn emit_map(report: &mut Report, map: &MomentMap, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, moment_map_text(map))?;
            report.line("map file", path.display().to_string());
        }
        None => {
            report.line("map file", "not written (pass --out PATH to save)");
        }
    }
    Ok(())
}

/// The full obstruction analysis: Lie kernels, cohomology, the
/// contraction map and its class, the existence dichotomy with the
/// quoted sufficient conditions, and the algebra-level Cartan class
/// when a pairing is present.  Works at the algebra level alone when
/// the scene has no action.
pub fn cmd_analyze(scene: &Scene) -> Result<Report> {
    let g = &scene.algebra;
    let full = scene.action.is_some() && scene.structure.is_some();
    let mut report;
    let mut ctx = None;
    if full {
        match prepare(scene, "analyze")? {
            Ok(c) => ctx = Some(c),
            Err(r) => return Ok(r),
        }
        report = Report::new("analyze", scene.digest.clone());
    } else {
        report = Report::new("analyze", scene.digest.clone());
        if scene.algebra.jacobi_check().is_some() {
            let mut v = cmd_validate(scene);
            v.command = "analyze".into();
            return Ok(v);
        }
    }

    report.section("lie kernels");
    for k in 1..=g.dim() {
        let kernel = LieKernel::new(g, k)?;
        report.line(
            format!("dim P_{k}"),
            format!("{} (of {})", kernel.rank(), subsets(g.dim(), k).len()),
        );
    }

    report.section("cohomology");
    let top = match &ctx {
        Some(c) => g.dim().min(c.plectic_degree() + 1),
        None => g.dim(),
    };
    for k in 1..=top {
        report.line(format!("dim H^{k}(g)"), ce_cohomology(g, k)?.dim.to_string());
    }

    if let Some(pairing) = &scene.pairing {
        report.section("cartan cocycle");
        match cartan_cocycle(g, pairing) {
            Err(e) => {
                report.check("pairing", e.to_string(), false);
            }
            Ok(cartan) => {
                report.line("theta", cartan.theta.render());
                report.check("closed", "d_g(theta) = 0", true);
                match &cartan.primitive {
                    None => report.check("class", "nonzero in H^3(g)", true),
                    Some(xi) => report.line("class", format!("zero; theta = d_g({})", xi.render())),
                };
            }
        }
    }

    let Some(ctx) = ctx else {
        report.line("note", "no action in the scene; algebra-level analysis only");
        report.verdict = if report.all_checks_pass() {
            Verdict::Pass
        } else {
            Verdict::Invalid
        };
        return Ok(report);
    };

    let n = ctx.plectic_degree();
    let analysis = existence_report(&ctx, &scene.sample_points())?;

    report.section("obstruction");
    let phi = &analysis.obstruction.phi;
    report.line(
        format!("contraction map on P_{}", phi.arity),
        if phi.values.is_empty() {
            "trivial (rank zero cycle space)".to_string()
        } else {
            let kernel = ctx.kernel(phi.arity);
            phi.values
                .iter()
                .enumerate()
                .map(|(j, p)| {
                    format!("phi({}) = {}", kernel.basis_multivector(j).render(), p.render())
                })
                .collect::<Vec<_>>()
                .join("; ")
        },
    );
    report.line(
        "phi identically zero",
        if phi.is_zero() { "yes" } else { "no" },
    );
    for (point, cocycle) in analysis
        .obstruction
        .points
        .iter()
        .zip(&analysis.obstruction.cocycles)
    {
        report.line(
            format!("cocycle at {}", render_point(point)),
            cocycle.render(),
        );
    }
    report.line(
        "cocycle class",
        match (analysis.obstruction.class_zero, &analysis.obstruction.primitive) {
            (true, Some(xi)) => format!("zero; primitive {}", xi.render()),
            (true, None) => "zero".to_string(),
            (false, _) => format!("nonzero in H^{}(g)", n + 1),
        },
    );

    report.section("existence");
    report.check("weak moment map", "exists (witness constructed and verified)", true);
    if analysis.homotopy_exists {
        report.check("homotopy moment map", "exists", true);
    } else {
        report.line("homotopy moment map", "obstructed (phi is nonzero)");
    }
    for cond in [&analysis.vanishing_cohomology, &analysis.vanishing_invariants] {
        report.line(
            format!("sufficient condition: {}", cond.statement),
            format!(
                "{} ({})",
                if cond.holds { "holds" } else { "does not hold" },
                cond.detail
            ),
        );
    }

    report.verdict = Verdict::Pass;
    Ok(report)
}

/// Builds a moment map of the requested flavor, re-verifies it, and
/// writes it out; an obstructed homotopy request exits with the
/// certificate instead.
pub fn cmd_construct(scene: &Scene, flavor: Flavor, out: Option<&Path>) -> Result<Report> {
    let ctx = match prepare(scene, "construct")? {
        Ok(c) => c,
        Err(r) => return Ok(r),
    };
    let mut report = Report::new("construct", scene.digest.clone());

    match flavor {
        Flavor::Kernel => {
            let map = construct_weak(&ctx)?;
            let check = verify_weak(&ctx, &map)?;
            if !check.pass() {
                return Err(Error::Internal(
                    "constructed weak map fails verification".into(),
                ));
            }
            push_map_section(&mut report, "constructed weak moment map", &ctx, &map);
            push_verify_section(&mut report, &ctx, &map, &check);
            emit_map(&mut report, &map, out)?;
            report.verdict = Verdict::Pass;
        }
        Flavor::Full => match construct_homotopy(&ctx)? {
            HomotopyOutcome::Constructed(map) => {
                let check = verify_homotopy(&ctx, &map)?;
                if !check.pass() {
                    return Err(Error::Internal(
                        "constructed homotopy map fails verification".into(),
                    ));
                }
                push_map_section(&mut report, "constructed homotopy moment map", &ctx, &map);
                push_verify_section(&mut report, &ctx, &map, &check);
                emit_map(&mut report, &map, out)?;
                report.verdict = Verdict::Pass;
            }
            HomotopyOutcome::Obstructed(cert) => {
                report.section("obstruction certificate");
                let dim = ctx.algebra().dim();
                let sets = subsets(dim, cert.arity);
                for (set, value) in sets.iter().zip(&cert.residuals) {
                    if !value.is_zero() {
                        report.check(
                            format!(
                                "final equation on {}",
                                Multivector::basis(dim, set).render()
                            ),
                            format_rat(value),
                            false,
                        );
                    }
                }
                let kernel = ctx.kernel(cert.arity);
                for (j, value) in cert.phi_restriction.iter().enumerate() {
                    report.line(
                        format!("phi({})", kernel.basis_multivector(j).render()),
                        format_rat(value),
                    );
                }
                report.line(
                    "conclusion",
                    format!(
                        "no homotopy moment map: the arity-{} residual is not a coboundary",
                        cert.arity
                    ),
                );
                report.verdict = Verdict::Obstructed;
            }
        },
    }
    Ok(report)
}

/// Verifies a map file against its defining equations; exit 0 exactly
/// on a full pass.
pub fn cmd_verify(scene: &Scene, map: &MomentMap) -> Result<Report> {
    let ctx = match prepare(scene, "verify")? {
        Ok(c) => c,
        Err(r) => return Ok(r),
    };
    let mut report = Report::new("verify", scene.digest.clone());
    let check = match map.flavor() {
        Flavor::Kernel => verify_weak(&ctx, map)?,
        Flavor::Full => verify_homotopy(&ctx, map)?,
    };
    push_map_section(&mut report, "moment map", &ctx, map);
    push_verify_section(&mut report, &ctx, map, &check);
    report.verdict = if check.pass() {
        Verdict::Pass
    } else {
        Verdict::Obstructed
    };
    Ok(report)
}

/// Strict extension of a verified weak map: the difference cochain,
/// its top component, and the assembled homotopy map when it exists.
pub fn cmd_extend(scene: &Scene, map: &MomentMap, out: Option<&Path>) -> Result<Report> {
    let ctx = match prepare(scene, "extend")? {
        Ok(c) => c,
        Err(r) => return Ok(r),
    };
    let mut report = Report::new("extend", scene.digest.clone());

    if map.flavor() != Flavor::Kernel {
        return Err(Error::FlavorMismatch {
            expected: "weak".into(),
            found: "homotopy".into(),
        });
    }
    let check = verify_weak(&ctx, map)?;
    push_verify_section(&mut report, &ctx, map, &check);
    if !check.pass() {
        report.line("conclusion", "the weak map must verify before extension");
        report.verdict = Verdict::Obstructed;
        return Ok(report);
    }

    if ctx.plectic_degree() == 1 {
        report.section("pairwise defects");
        for d in symplectic_defects(&ctx, map)? {
            report.line(
                format!("h(e{}, e{})", d.i + 1, d.j + 1),
                format!("{} (constant)", format_rat(&d.value)),
            );
        }
    }

    let phi = crate::complexes::phi(&ctx);
    if !phi.is_zero() {
        report.section("hypotheses");
        let kernel = ctx.kernel(phi.arity);
        for (j, p) in phi.values.iter().enumerate() {
            let ok = p.is_zero();
            report.check(
                format!("phi({})", kernel.basis_multivector(j).render()),
                p.render(),
                ok,
            );
        }
        report.line(
            "conclusion",
            "the contraction map on top cycles is nonzero: no homotopy moment map \
             exists at all, so no extension can",
        );
        report.verdict = Verdict::Obstructed;
        return Ok(report);
    }

    let extension = strict_extension(&ctx, map)?;
    report.section("difference cochain");
    let mut any = false;
    for k in extension.gamma.arities().collect::<Vec<_>>() {
        for (j, f) in extension
            .gamma
            .component_or_zero(&ctx, k)
            .iter()
            .enumerate()
        {
            if !f.is_zero() {
                any = true;
                report.line(
                    format!("gamma_{k}({})", domain_label(&ctx, Flavor::Full, k, j)),
                    f.render(),
                );
            }
        }
    }
    if !any {
        report.line("gamma", "0");
    }
    for (a, _) in &extension.primitives {
        report.line(
            format!("arity {a}"),
            "solved into a coboundary primitive".to_string(),
        );
    }
    let n = ctx.plectic_degree();
    report.check(
        format!("top component gamma_{}", n + 1),
        if extension.gamma_top_zero {
            "0".to_string()
        } else {
            let rendered: Vec<String> = extension.gamma_top.iter().map(format_rat).collect();
            rendered.join(", ")
        },
        extension.gamma_top_zero,
    );

    match &extension.extension {
        Some(ext) => {
            push_map_section(&mut report, "extension", &ctx, ext);
            let reverify = extension
                .extension_verified
                .as_ref()
                .expect("extension is verified when present");
            report.section("extension checks");
            report.check(
                "verifies as a homotopy moment map",
                format!("{} equations", reverify.checked),
                reverify.pass(),
            );
            report.check(
                "restricts to the input weak map",
                "exact equality on every cycle",
                ext.restrict(&ctx).equals(map),
            );
            emit_map(&mut report, ext, out)?;
            report.verdict = Verdict::Pass;
        }
        None => {
            report.line(
                "conclusion",
                "the weak map does not extend: the top difference component is nonzero",
            );
            report.verdict = Verdict::Obstructed;
        }
    }
    Ok(report)
}

/// Infinitesimal equivariance: the residual table, then a correction
/// search under the scene's degree cap when the map is not already
/// equivariant.
pub fn cmd_equivariance(scene: &Scene, map: &MomentMap, out: Option<&Path>) -> Result<Report> {
    let ctx = match prepare(scene, "equivariance")? {
        Ok(c) => c,
        Err(r) => return Ok(r),
    };
    let mut report = Report::new("equivariance", scene.digest.clone());

    let check = match map.flavor() {
        Flavor::Kernel => verify_weak(&ctx, map)?,
        Flavor::Full => verify_homotopy(&ctx, map)?,
    };
    if !check.pass() {
        push_verify_section(&mut report, &ctx, map, &check);
        report.line("conclusion", "the map must verify before the equivariance analysis");
        report.verdict = Verdict::Obstructed;
        return Ok(report);
    }

    let residuals = equivariance_check(&ctx, map)?;
    report.section("equivariance residuals");
    report.line("residuals checked", residuals.checked.to_string());
    if residuals.equivariant {
        report.check("all residuals", "0", true);
        report.line("obstruction", ObstructionStatus::Vanishes.label());
        report.verdict = Verdict::Pass;
        return Ok(report);
    }
    for e in &residuals.residuals {
        report.check(
            format!(
                "x = e{}, p = {}",
                e.generator + 1,
                domain_label(&ctx, map.flavor(), e.arity, e.index)
            ),
            e.residual.render(),
            false,
        );
    }

    let cap = scene.settings.degree_cap;
    let outcome = equivariantize(&ctx, map, cap)?;
    report.section("correction search");
    report.line(
        "degree cap",
        format!("{cap} (correction coefficients are searched up to this degree)"),
    );
    match outcome.status {
        ObstructionStatus::Vanishes => {
            let correction = outcome.correction.as_ref().expect("correction present");
            let corrected = outcome.corrected.as_ref().expect("corrected map present");
            push_map_section(&mut report, "correction", &ctx, correction);
            push_map_section(&mut report, "corrected map", &ctx, corrected);
            report.section("corrected checks");
            report.check("corrected map verifies", "re-checked", true);
            report.check("corrected map is equivariant", "re-checked", true);
            emit_map(&mut report, corrected, out)?;
            report.line("obstruction", ObstructionStatus::Vanishes.label());
            report.verdict = Verdict::Pass;
        }
        ObstructionStatus::Nonzero => {
            report.line(
                "obstruction",
                format!(
                    "{} (conclusive: the action is affine and the cap covers the map's degree)",
                    ObstructionStatus::Nonzero.label()
                ),
            );
            report.verdict = Verdict::Obstructed;
        }
        ObstructionStatus::UndecidedWithinCap => {
            report.line(
                "obstruction",
                format!(
                    "{} (raise degree_cap in the scene settings to search further)",
                    ObstructionStatus::UndecidedWithinCap.label()
                ),
            );
            report.verdict = Verdict::Undecided;
        }
    }
    Ok(report)
}
