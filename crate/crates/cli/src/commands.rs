use std::collections::BTreeMap;
use std::str::FromStr;

use madelung_core::fock::{exact_ground_state, Level, PairingModel};
use madelung_core::pairing::{bcs_quasiparticle, bdg_eigen, richardson_solve, BdGBlock};
use madelung_core::shells::{
    classify, element_symbol, fill, format_abbreviated, format_configuration, madelung_key,
    Classification, ElementDataset, FillingRule,
};
use madelung_core::spectra::{
    dirac_binding_hartree, dirac_energy, dirac_energy_by_bisection, fine_structure_expansion,
    gamma_kappa, gegenbauer_residual, hydrogen_energy, madelung_energy, sw_discreteness_scan,
    RelativisticLevel, DEFAULT_ALPHA,
};

use crate::report::{Report, Table};
use crate::verify::{verify_all, CheckStatus};
use crate::{CliError, Command, RunConfig};

/// Typed access to the string parameter map.
struct Params<'a> {
    map: &'a BTreeMap<String, String>,
}

impl Params<'_> {
    fn raw(&self, key: &str) -> Option<&str> {
        self.map.get(key).map(|s| s.trim())
    }

    fn parsed<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        self.raw(key)
            .map(|s| {
                s.parse::<T>()
                    .map_err(|_| CliError::Config(format!("--{key}: cannot parse '{s}'")))
            })
            .transpose()
    }

    fn required<T: FromStr>(&self, key: &str) -> Result<T, CliError> {
        self.parsed(key)?
            .ok_or_else(|| CliError::Config(format!("--{key} is required")))
    }

    fn or<T: FromStr>(&self, key: &str, default: T) -> Result<T, CliError> {
        Ok(self.parsed(key)?.unwrap_or(default))
    }

    fn finite(&self, key: &str, value: f64) -> Result<f64, CliError> {
        if value.is_finite() {
            Ok(value)
        } else {
            Err(CliError::Config(format!("--{key} must be finite")))
        }
    }

    fn list<T: FromStr>(&self, key: &str) -> Result<Option<Vec<T>>, CliError> {
        self.raw(key)
            .map(|s| {
                s.split(',')
                    .map(|item| {
                        item.trim().parse::<T>().map_err(|_| {
                            CliError::Config(format!("--{key}: cannot parse '{}'", item.trim()))
                        })
                    })
                    .collect()
            })
            .transpose()
    }
}

pub(crate) fn execute(config: &RunConfig) -> Result<(Report, bool), CliError> {
    let p = Params {
        map: &config.parameters,
    };
    let mut report = Report::new(config.command.name());
    let success = match config.command {
        Command::Aufbau => aufbau(&p, config, &mut report)?,
        Command::Classify => classify_cmd(&p, config, &mut report)?,
        Command::Spectrum => spectrum(&p, &mut report)?,
        Command::Dirac => dirac(&p, &mut report)?,
        Command::Richardson => richardson(&p, &mut report)?,
        Command::Bdg => bdg(&p, &mut report)?,
        Command::Verify => verify(config, &mut report),
        Command::Swscan => swscan(&p, &mut report)?,
    };
    Ok((report, success))
}

fn load_dataset(config: &RunConfig) -> Result<Option<ElementDataset>, CliError> {
    Ok(config.dataset.load()?)
}

fn diff_text(c: &Classification) -> String {
    c.diff
        .iter()
        .map(|d| format!("{} {}->{}", d.orbital, d.predicted, d.experimental))
        .collect::<Vec<_>>()
        .join("; ")
}

fn aufbau(p: &Params, config: &RunConfig, report: &mut Report) -> Result<bool, CliError> {
    let rule: FillingRule = p.or("rule", "madelung".to_string())?.parse()?;
    let z: u32 = p.required("z")?;
    let with_classify: bool = p.or("classify", false)?;
    report.input("rule", rule.name());
    report.input("z", z);
    report.input("classify", with_classify);

    let c = fill(rule, z)?;
    let mut summary = Table::new("configuration", &["z", "symbol", "rule", "predicted", "full"]);
    summary.push(vec![
        z.into(),
        element_symbol(z).into(),
        rule.name().into(),
        format_abbreviated(&c).into(),
        format_configuration(&c, None)?.into(),
    ]);
    report.tables.push(summary);

    let mut occ = Table::new("occupations", &["orbital", "n", "l", "electrons"]);
    let mut orbitals: Vec<_> = c.iter().collect();
    orbitals.sort_by_key(|&(o, _)| madelung_key(o));
    for (o, k) in orbitals {
        occ.push(vec![o.to_string().into(), o.n().into(), o.l().into(), k.into()]);
    }
    report.tables.push(occ);

    if with_classify {
        if rule != FillingRule::Madelung {
            report
                .warnings
                .push("classification always compares against the Madelung prediction".into());
        }
        match load_dataset(config)? {
            Some(data) => {
                let class = classify(z, &data)?;
                let experimental = &data.get(z).expect("classify found the record").experimental;
                let mut t = Table::new("classification", &["z", "status", "experimental"]);
                t.push(vec![
                    z.into(),
                    class.status.to_string().into(),
                    format_abbreviated(experimental).into(),
                ]);
                report.tables.push(t);
                let mut d = Table::new("diff", &["orbital", "predicted", "experimental"]);
                for x in &class.diff {
                    d.push(vec![
                        x.orbital.to_string().into(),
                        x.predicted.into(),
                        x.experimental.into(),
                    ]);
                }
                report.tables.push(d);
            }
            None => report
                .warnings
                .push("dataset disabled; classification skipped".into()),
        }
    }
    Ok(true)
}

fn classify_cmd(p: &Params, config: &RunConfig, report: &mut Report) -> Result<bool, CliError> {
    let z: Option<u32> = p.parsed("z")?;
    report.input("z", z);
    let Some(data) = load_dataset(config)? else {
        report
            .warnings
            .push("dataset disabled; classification skipped".into());
        return Ok(true);
    };
    let targets: Vec<u32> = match z {
        Some(z) => vec![z],
        None => data.records().map(|r| r.z).collect(),
    };
    let mut t = Table::new(
        "elements",
        &["z", "symbol", "status", "predicted", "experimental", "diff"],
    );
    for z in targets {
        let class = classify(z, &data)?;
        let record = data.get(z).expect("classify found the record");
        t.push(vec![
            z.into(),
            record.symbol.clone().into(),
            class.status.to_string().into(),
            format_abbreviated(&fill(FillingRule::Madelung, z)?).into(),
            format_abbreviated(&record.experimental).into(),
            diff_text(&class).into(),
        ]);
    }
    report.tables.push(t);
    Ok(true)
}

fn spectrum(p: &Params, report: &mut Report) -> Result<bool, CliError> {
    let z: u32 = p.required("z")?;
    let n_r: u32 = p.required("n-r")?;
    let l: u32 = p.required("l")?;
    if z == 0 {
        return Err(madelung_core::Error::Domain("nuclear charge must be >= 1".into()).into());
    }
    report.input("z", z);
    report.input("n-r", n_r);
    report.input("l", l);
    let mut t = Table::new("energies", &["model", "value", "unit"]);
    let h = hydrogen_energy(z, n_r, l);
    t.push(vec!["hydrogenic".into(), h.value.into(), h.unit.to_string().into()]);
    let m = madelung_energy(z, n_r, l);
    t.push(vec!["madelung".into(), m.value.into(), m.unit.to_string().into()]);
    report.tables.push(t);
    let mut g = Table::new("gegenbauer", &["n", "l", "eigenvalue", "residual"]);
    let eigen = f64::from(n_r + l + 1).powi(2) - 1.0;
    g.push(vec![
        n_r.into(),
        l.into(),
        eigen.into(),
        gegenbauer_residual(n_r, l, 64)?.into(),
    ]);
    report.tables.push(g);
    Ok(true)
}

fn dirac(p: &Params, report: &mut Report) -> Result<bool, CliError> {
    let z: u32 = p.required("z")?;
    let n_r: u32 = p.required("n-r")?;
    let kappa: i32 = p.required("kappa")?;
    let alpha = p.finite("alpha", p.or("alpha", DEFAULT_ALPHA)?)?;
    report.input("z", z);
    report.input("n-r", n_r);
    report.input("kappa", kappa);
    report.input("alpha", alpha);
    let level = RelativisticLevel::new(n_r, kappa, z, alpha)?;
    let mut t = Table::new(
        "level",
        &[
            "l",
            "j",
            "n_tilde",
            "gamma_kappa",
            "effective_principal",
            "energy_mc2",
            "binding_hartree",
            "bisection_mc2",
            "expansion_mc2",
        ],
    );
    t.push(vec![
        level.l().into(),
        level.j().to_string().into(),
        level.n_tilde().into(),
        gamma_kappa(&level).into(),
        level.effective_principal().into(),
        dirac_energy(&level).value.into(),
        dirac_binding_hartree(&level).value.into(),
        dirac_energy_by_bisection(&level)?.into(),
        fine_structure_expansion(z, level.n_tilde(), level.j(), alpha)?
            .value
            .into(),
    ]);
    report.tables.push(t);
    Ok(true)
}

fn richardson(p: &Params, report: &mut Report) -> Result<bool, CliError> {
    let levels: Vec<f64> = p
        .list("levels")?
        .ok_or_else(|| CliError::Config("--levels is required".into()))?;
    let omegas: Vec<u32> = p.list("degeneracies")?.unwrap_or_else(|| vec![1; levels.len()]);
    if omegas.len() != levels.len() {
        return Err(CliError::Config(format!(
            "{} levels but {} degeneracies",
            levels.len(),
            omegas.len()
        )));
    }
    let g: f64 = p.required("g")?;
    let g = p.finite("g", g)?;
    let pairs: u32 = p.required("pairs")?;
    report.input(
        "levels",
        levels.iter().map(|e| format!("{e}")).collect::<Vec<_>>().join(","),
    );
    report.input(
        "degeneracies",
        omegas.iter().map(u32::to_string).collect::<Vec<_>>().join(","),
    );
    report.input("g", g);
    report.input("pairs", pairs);

    let model = PairingModel::new(
        levels
            .iter()
            .zip(&omegas)
            .map(|(&epsilon, &omega)| Level { epsilon, omega })
            .collect(),
        g,
    )?;
    let sol = richardson_solve(&model, pairs)?;
    let mut summary = Table::new(
        "summary",
        &["total_energy", "total_energy_imag", "residual", "complex_detour", "exact_energy"],
    );
    let exact = if model.pair_capacity() <= 16 {
        Some(exact_ground_state(&model, pairs)?.0)
    } else {
        report
            .warnings
            .push("pair capacity above 16; exact diagonalization skipped".into());
        None
    };
    summary.push(vec![
        sol.total_energy.into(),
        sol.total_energy_imag.into(),
        sol.residual.into(),
        sol.complex_detour.into(),
        exact.into(),
    ]);
    report.tables.push(summary);
    let mut t = Table::new("pair_energies", &["index", "re", "im"]);
    for (i, e) in sol.pair_energies.iter().enumerate() {
        t.push(vec![i.into(), e.re.into(), e.im.into()]);
    }
    report.tables.push(t);
    Ok(true)
}

fn bdg(p: &Params, report: &mut Report) -> Result<bool, CliError> {
    let epsilon = p.finite("epsilon", p.required("epsilon")?)?;
    let delta = p.finite("delta", p.required("delta")?)?;
    report.input("epsilon", epsilon);
    report.input("delta", delta);
    let eig = bdg_eigen(&BdGBlock { epsilon, delta });
    let mut t = Table::new("eigen", &["e_plus", "e_minus", "u", "v", "quasiparticle"]);
    t.push(vec![
        eig.e_plus.into(),
        eig.e_minus.into(),
        eig.u.into(),
        eig.v.into(),
        bcs_quasiparticle(epsilon, delta).into(),
    ]);
    report.tables.push(t);
    Ok(true)
}

fn swscan(p: &Params, report: &mut Report) -> Result<bool, CliError> {
    let n_r: u32 = p.required("n-r")?;
    let l: u32 = p.required("l")?;
    let kappa: i32 = p.required("kappa")?;
    let z_max: u32 = p.or("z-max", 137)?;
    let alpha = p.finite("alpha", p.or("alpha", DEFAULT_ALPHA)?)?;
    report.input("n-r", n_r);
    report.input("l", l);
    report.input("kappa", kappa);
    report.input("z-max", z_max);
    report.input("alpha", alpha);
    let scan = sw_discreteness_scan(n_r, l, kappa, z_max, alpha)?;
    let mut t = Table::new("entries", &["z", "margin"]);
    for e in &scan.entries {
        t.push(vec![e.z.into(), e.margin.into()]);
    }
    report.tables.push(t);
    let mut s = Table::new("sign_changes", &["z"]);
    for &z in &scan.sign_changes {
        s.push(vec![z.into()]);
    }
    report.tables.push(s);
    if scan.entries.iter().any(|e| e.margin.is_none()) {
        report
            .warnings
            .push("supercritical charges have undefined margins".into());
    }
    Ok(true)
}

fn verify(config: &RunConfig, report: &mut Report) -> bool {
    let result = verify_all(&config.dataset);
    let mut t = Table::new(
        "properties",
        &["module", "property", "status", "measured", "tolerance", "detail"],
    );
    for c in &result.checks {
        t.push(vec![
            c.module.into(),
            c.name.into(),
            c.status.to_string().into(),
            c.measured.into(),
            c.tolerance.into(),
            c.detail.clone().into(),
        ]);
    }
    report.tables.push(t);
    let count = |s: CheckStatus| result.checks.iter().filter(|c| c.status == s).count();
    let mut summary = Table::new("summary", &["passed", "failed", "skipped"]);
    summary.push(vec![
        count(CheckStatus::Pass).into(),
        count(CheckStatus::Fail).into(),
        count(CheckStatus::Skip).into(),
    ]);
    report.tables.push(summary);
    result.all_passed()
}

