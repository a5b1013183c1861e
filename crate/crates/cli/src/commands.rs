use crate::args;
use crate::error::CliError;
use crate::manifest::{self, ManifoldFile};
use crate::report::Report;
use crate::{Cli, Command, DimArgs, EStability, Format, StabilityCommand, SwTableArgs, Via};
use std::path::Path;
use swcalc::chambers::{classify_chamber, is_c_good, wall_pairing, OrientationData, PeriodRay};
use swcalc::extalg::wall_crossing_delta;
use swcalc::kahler::{characteristic_box, sw_table, Pipeline, SwValue};
use swcalc::rational::{render_q, Q};
use swcalc::stability::{
    delta_e_phi, m_over, m_under, oriented_pair_status_rank2, oriented_sheaf_semistable,
    poly_compare, rho_interval, slope, split_pair_status, BundleStability, PairProfile, SlopeData,
};
use swcalc::topology::Sign;

pub fn execute(cli: &Cli) -> Result<String, CliError> {
    let report = match &cli.command {
        Command::Validate { file, echo } => return validate(file, *echo, cli.format),
        Command::Dim(a) => dim(a)?,
        Command::Admissible { file, p, c } => admissible(file, *p, c.as_deref())?,
        Command::SwTable(a) => table(a)?,
        Command::Strata {
            file,
            p1,
            c1,
            max_l,
        } => strata(file, *p1, c1, *max_l)?,
        Command::Chamber {
            file,
            c,
            b,
            h,
            component,
        } => chamber(file, c, b.as_deref(), h, *component)?,
        Command::WallCross {
            file,
            c,
            lambda,
            o1,
            h0,
        } => wall_cross(file, c, lambda, *o1, h0.as_deref())?,
        Command::Stability(s) => stability(s)?,
    };
    Ok(render(&report, cli.format))
}

fn render(r: &Report, format: Format) -> String {
    match format {
        Format::Text => r.to_text(),
        Format::Json => r.to_json(),
    }
}

fn read(path: &Path) -> Result<ManifoldFile, CliError> {
    let src = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    manifest::parse(&src)
}

/// Reads a file and refuses to continue unless it validates.
fn load(path: &Path) -> Result<ManifoldFile, CliError> {
    let file = read(path)?;
    let report = file.check();
    if !report.is_valid() {
        return Err(CliError::Invalid(report.messages()));
    }
    Ok(file)
}

fn sign_arg(name: &str, v: i64) -> Result<Sign, CliError> {
    Sign::from_i64(v).ok_or_else(|| CliError::Usage(format!("--{name} must be 1 or -1, got {v}")))
}

fn vec_str(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

fn qvec_str(v: &[Q]) -> String {
    v.iter().map(render_q).collect::<Vec<_>>().join(",")
}

fn checked_len<T>(v: Vec<T>, expected: usize, what: &str) -> Result<Vec<T>, CliError> {
    if v.len() != expected {
        return Err(CliError::Domain(format!(
            "{what} has {} coordinates, expected {expected}",
            v.len()
        )));
    }
    Ok(v)
}

fn validate(path: &Path, echo: bool, format: Format) -> Result<String, CliError> {
    let file = read(path)?;
    let check = file.check();
    if !check.is_valid() {
        return Err(CliError::Invalid(check.messages()));
    }
    if echo {
        return Ok(file.emit());
    }
    let m = &file.topology;
    let r = Report::new("validate")
        .meta("name", &m.name)
        .meta("status", "valid")
        .columns(&[
            "b1",
            "bplus",
            "bminus",
            "euler",
            "signature",
            "kahler",
            "psc",
        ]);
    let mut r = r;
    r.row(vec![
        m.b1.to_string(),
        m.bplus.to_string(),
        m.bminus.to_string(),
        m.euler.to_string(),
        m.signature.to_string(),
        file.kahler.is_some().to_string(),
        file.psc_ray.is_some().to_string(),
    ]);
    Ok(render(&r, format))
}

fn dim(a: &DimArgs) -> Result<Report, CliError> {
    let file = load(&a.file)?;
    let m = &file.topology;
    if a.pu2 {
        let p1 = a.p1.expect("clap requires --p1");
        let c1 = checked_len(
            args::int_vec(a.c1.as_deref().expect("clap requires --c1"))?,
            m.b2(),
            "c1",
        )?;
        let admissible = m.spin_u2_admissible(p1, &c1)?;
        let chi = m.expected_dim_pu2(p1, &c1)?;
        let mut r = Report::new("dim --pu2").meta("name", &m.name).columns(&[
            "p1",
            "c1",
            "admissible",
            "chi",
        ]);
        r.row(vec![
            p1.to_string(),
            vec_str(&c1),
            admissible.to_string(),
            chi.to_string(),
        ]);
        return Ok(r);
    }
    let c =
        a.c.as_deref()
            .ok_or_else(|| CliError::Usage("dim needs --c, or --pu2 with --p1 and --c1".into()))?;
    let c = m.characteristic(checked_len(args::int_vec(c)?, m.b2(), "c")?)?;
    let w = m.expected_dim_abelian(&c)?;
    let plus = m.c2_spinor_bundle(&c, Sign::Plus)?;
    let minus = m.c2_spinor_bundle(&c, Sign::Minus)?;
    let mut r = Report::new("dim").meta("name", &m.name).columns(&[
        "c",
        "w_c",
        "c2_plus",
        "c2_minus",
        "spinc_per_chern",
    ]);
    r.row(vec![
        vec_str(c.as_slice()),
        w.to_string(),
        render_q(&plus),
        render_q(&minus),
        m.spinc_count_per_chern().to_string(),
    ]);
    Ok(r)
}

fn admissible(path: &Path, p: i64, c: Option<&str>) -> Result<Report, CliError> {
    let file = load(path)?;
    let m = &file.topology;
    let mut r = Report::new("admissible").meta("name", &m.name);
    match c {
        None => {
            r = r.columns(&["group", "p", "admissible"]);
            r.row(vec![
                "Sp(1)".into(),
                p.to_string(),
                m.spin_sp1_admissible(p).to_string(),
            ]);
        }
        Some(c) => {
            let c = checked_len(args::int_vec(c)?, m.b2(), "c")?;
            r = r.columns(&["group", "p", "c", "admissible"]);
            r.row(vec![
                "U(2)".into(),
                p.to_string(),
                vec_str(&c),
                m.spin_u2_admissible(p, &c)?.to_string(),
            ]);
        }
    }
    Ok(r)
}

fn table(a: &SwTableArgs) -> Result<Report, CliError> {
    if a.cmin > a.cmax {
        return Err(CliError::Usage(format!(
            "--cmin {} exceeds --cmax {}",
            a.cmin, a.cmax
        )));
    }
    let file = load(&a.file)?;
    let m = &file.topology;
    let facts = file.facts()?;
    let pipeline = match a.via {
        Via::Auto => Pipeline::All,
        Via::Psc => Pipeline::PscOnly,
        Via::Kahler => Pipeline::KahlerOnly,
    };
    let o1 = sign_arg("o1", a.o1)?;
    let chars = characteristic_box(m, a.cmin, a.cmax);
    let t = sw_table(m, &facts, &chars, o1, pipeline)?;
    let mut r = Report::new("sw-table")
        .meta("name", &m.name)
        .meta("h0", qvec_str(t.orientation.h0.h()))
        .meta("o1", o1)
        .columns(&[
            "c", "w_c", "SW+", "SW-", "delta", "source", "m", "branch", "twist",
        ]);
    for row in &t.rows {
        let (mm, branch, twist) = match &row.kahler {
            Some(k) => (
                vec_str(&k.m),
                if k.dou_m_nonempty {
                    "dou_m".to_string()
                } else {
                    "dou_K_minus_m".to_string()
                },
                k.orientation_twist.to_string(),
            ),
            None => ("-".into(), "-".into(), "-".into()),
        };
        let val = |v: SwValue| v.to_string();
        r.row(vec![
            vec_str(&row.c),
            row.w_c.to_string(),
            val(row.plus),
            val(row.minus),
            row.delta.to_string(),
            row.source.to_string(),
            mm,
            branch,
            twist,
        ]);
    }
    Ok(r)
}

fn strata(path: &Path, p1: i64, c1: &str, max_l: Option<u32>) -> Result<Report, CliError> {
    let file = load(path)?;
    let m = &file.topology;
    let c1 = checked_len(args::int_vec(c1)?, m.b2(), "c1")?;
    let list = m.uhlenbeck_strata(p1, &c1, max_l)?;
    let mut r = Report::new("strata")
        .meta("name", &m.name)
        .meta("p1", p1)
        .meta("c1", vec_str(&c1))
        .columns(&["l", "p1", "dim"]);
    for s in list {
        r.row(vec![s.l.to_string(), s.p1.to_string(), s.dim.to_string()]);
    }
    Ok(r)
}

fn chamber(
    path: &Path,
    c: &str,
    b: Option<&str>,
    h: &str,
    component: i64,
) -> Result<Report, CliError> {
    let file = load(path)?;
    let m = &file.topology;
    let c = m.characteristic(checked_len(args::int_vec(c)?, m.b2(), "c")?)?;
    let b = match b {
        Some(b) => checked_len(args::rat_vec(b)?, m.b2(), "b")?,
        None => vec![Q::from_integer(0.into()); m.b2()],
    };
    let h = checked_len(args::rat_vec(h)?, m.b2(), "h")?;
    let ray = PeriodRay::new(m, h, sign_arg("component", component)?)?;
    let side = classify_chamber(m, &c, &ray, &b)?;
    let good = is_c_good(m, &c, &ray, &b)?;
    let s = wall_pairing(m, c.as_slice(), &b, ray.h())?;
    let mut r = Report::new("chamber")
        .meta("name", &m.name)
        .meta("c", vec_str(c.as_slice()))
        .meta("b", qvec_str(&b))
        .meta("h", qvec_str(ray.h()))
        .columns(&["pairing", "chamber", "component", "c_good"]);
    r.row(vec![
        render_q(&s),
        side.to_string(),
        ray.component_sign().to_string(),
        good.to_string(),
    ]);
    Ok(r)
}

fn wall_cross(
    path: &Path,
    c: &str,
    lambda: &str,
    o1: i64,
    h0: Option<&str>,
) -> Result<Report, CliError> {
    let file = load(path)?;
    let m = &file.topology;
    let c = m.characteristic(checked_len(args::int_vec(c)?, m.b2(), "c")?)?;
    let lambda = args::ext_form(m.b1, lambda)?;
    let h0 = match h0 {
        Some(h) => checked_len(args::rat_vec(h)?, m.b2(), "h0")?,
        None => {
            let facts = file.facts()?;
            facts
                .psc_ray
                .map(|r| r.representative())
                .or(facts.kahler.map(|k| k.kahler_ray.representative()))
                .ok_or_else(|| {
                    CliError::Domain("no --h0 given and the file has no psc or kahler ray".into())
                })?
        }
    };
    let orient = OrientationData {
        o1_sign: sign_arg("o1", o1)?,
        h0: PeriodRay::new(m, h0, Sign::Plus)?,
    };
    let delta = wall_crossing_delta(m, &c, &lambda, &orient)?;
    let mut r = Report::new("wall-cross")
        .meta("name", &m.name)
        .meta("h0", qvec_str(orient.h0.h()))
        .meta("o1", orient.o1_sign)
        .columns(&["c", "w_c", "lambda", "delta"]);
    r.row(vec![
        vec_str(c.as_slice()),
        m.expected_dim_abelian(&c)?.to_string(),
        lambda.to_string(),
        delta.to_string(),
    ]);
    Ok(r)
}

fn stability(cmd: &StabilityCommand) -> Result<Report, CliError> {
    match cmd {
        StabilityCommand::Slope { degree, rank } => {
            let d = SlopeData::new(args::rational(degree)?, *rank)?;
            let mut r = Report::new("stability slope").columns(&["degree", "rank", "slope"]);
            r.row(vec![
                render_q(&d.degree),
                rank.to_string(),
                render_q(&slope(&d)),
            ]);
            Ok(r)
        }
        StabilityCommand::Pair {
            mu_e,
            mu_div,
            e_stability,
        } => {
            let mu_e = args::rational(mu_e)?;
            let mu_div = mu_div.as_deref().map(args::rational).transpose()?;
            let e = match e_stability {
                EStability::Stable => BundleStability::Stable,
                EStability::Polystable => BundleStability::Polystable,
                EStability::Neither => BundleStability::Neither,
            };
            let status = oriented_pair_status_rank2(mu_div.is_none(), e, mu_div.as_ref(), &mu_e)?;
            let mut r =
                Report::new("stability pair").columns(&["phi", "mu_E", "mu_div", "E", "status"]);
            r.row(vec![
                if mu_div.is_none() { "zero" } else { "nonzero" }.into(),
                render_q(&mu_e),
                mu_div.as_ref().map(render_q).unwrap_or_else(|| "-".into()),
                e.to_string(),
                status.to_string(),
            ]);
            Ok(r)
        }
        StabilityCommand::SplitPair { deg_d, deg_l } => {
            let d = args::rational(deg_d)?;
            let l = args::rational(deg_l)?;
            let mut r = Report::new("stability split-pair").columns(&["deg_D", "deg_L", "status"]);
            r.row(vec![
                render_q(&d),
                render_q(&l),
                split_pair_status(&d, &l).to_string(),
            ]);
            Ok(r)
        }
        StabilityCommand::Rho {
            under,
            over,
            mu_e,
            subs,
            quots,
        } => {
            let (lo, hi) = match (under, over, mu_e) {
                (Some(u), over, None) if subs.is_empty() && quots.is_empty() => (
                    args::rational(u)?,
                    over.as_deref().map(args::rational).transpose()?,
                ),
                (None, None, Some(mu)) => {
                    let subs = subs
                        .iter()
                        .map(|s| args::rational(s))
                        .collect::<Result<Vec<_>, _>>()?;
                    let quots = quots
                        .iter()
                        .map(|s| args::rational(s))
                        .collect::<Result<Vec<_>, _>>()?;
                    (m_under(&args::rational(mu)?, &subs), m_over(&quots))
                }
                _ => {
                    return Err(CliError::Usage(
                        "rho needs --under [--over], or --mu-e with --sub/--quot slopes".into(),
                    ))
                }
            };
            // No quotient witnesses means m_over = +inf, so the interval is never empty.
            let nonempty = hi.as_ref().is_none_or(|h| rho_interval(&lo, h).is_some());
            let hi_s = hi.as_ref().map(render_q).unwrap_or_else(|| "inf".into());
            let mut r = Report::new("stability rho")
                .columns(&["m_under", "m_over", "nonempty", "interval"]);
            r.row(vec![
                render_q(&lo),
                hi_s.clone(),
                nonempty.to_string(),
                if nonempty {
                    format!("({}, {hi_s})", render_q(&lo))
                } else {
                    "empty".into()
                },
            ]);
            Ok(r)
        }
        StabilityCommand::Compare { p, q } => {
            let (pp, qq) = (args::poly(p)?, args::poly(q)?);
            let ord = match poly_compare(&pp, &qq) {
                std::cmp::Ordering::Less => "<",
                std::cmp::Ordering::Equal => "=",
                std::cmp::Ordering::Greater => ">",
            };
            let mut r = Report::new("stability compare").columns(&["P", "Q", "order"]);
            r.row(vec![pp.to_string(), qq.to_string(), ord.into()]);
            Ok(r)
        }
        StabilityCommand::Delta {
            pe,
            rk_e,
            pker,
            rk_ker,
        } => {
            let d = delta_e_phi(&args::poly(pe)?, *rk_e, &args::poly(pker)?, *rk_ker)?;
            let mut r = Report::new("stability delta").columns(&["delta", "coefficients"]);
            r.row(vec![d.to_string(), qvec_str(d.coeffs())]);
            Ok(r)
        }
        StabilityCommand::Semistable {
            rk_e,
            pe,
            phi_injective,
            epsilon_iso,
            kermax,
            subs,
        } => {
            let profile = PairProfile {
                rk_e: *rk_e,
                p_e: args::poly(pe)?,
                phi_injective: *phi_injective,
                kermax: kermax.as_deref().map(args::subsheaf).transpose()?,
                subsheaves: subs
                    .iter()
                    .map(|s| args::subsheaf(s))
                    .collect::<Result<_, _>>()?,
                epsilon_iso: *epsilon_iso,
            };
            let ok = oriented_sheaf_semistable(&profile)?;
            let mut r = Report::new("stability semistable")
                .meta("witnesses", profile.subsheaves.len())
                .columns(&["rk_E", "P_E", "phi_injective", "semistable"]);
            r.row(vec![
                rk_e.to_string(),
                profile.p_e.to_string(),
                phi_injective.to_string(),
                ok.to_string(),
            ]);
            Ok(r)
        }
    }
}
