use std::io::Write;

use distill_core::audit::{
    check_oracle_equivalence, closed_form_findings, printed_formula_findings, FormulaFinding,
    AGREEMENT_TOL, RELIABILITIES,
};
use distill_core::oracle::pauli_conjugation_table;

use super::{csv_writer, write_header};
use crate::config::RunConfig;
use crate::error::CliError;
use crate::format::number;

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn findings_table(
    out: &mut dyn Write,
    findings: &[FormulaFinding],
    digits: usize,
) -> Result<(), CliError> {
    let mut w = csv_writer(out);
    w.write_record(["formula", "placement", "cases", "max_abs_dev", "agrees"])?;
    for f in findings {
        w.write_record([
            f.formula.to_string(),
            f.placement.to_string(),
            f.cases.to_string(),
            number(f.max_abs_dev, digits),
            yes_no(f.agrees()).to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Sections, in order: `bcnot-conjugation`, `analytic-vs-oracle`,
/// `closed-forms`, `printed-formulas`. Only the middle two can fail the run.
pub fn audit(config: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let d = config.digits;
    let table = pauli_conjugation_table::<f64>();
    let equivalence = check_oracle_equivalence(config.pairs, config.seed, &RELIABILITIES);
    let closed = closed_form_findings()?;
    let printed = printed_formula_findings(config.seed)?;

    write_header(config, out)?;

    writeln!(out, "# section: bcnot-conjugation")?;
    {
        let mut w = csv_writer(out);
        w.write_record(["control", "target", "computed", "printed", "agrees"])?;
        for e in &table.entries {
            w.write_record([
                e.control.symbol().to_string(),
                e.target.symbol().to_string(),
                e.computed.map(|c| c.to_string()).unwrap_or_else(|| "not-a-single-term".into()),
                e.reference.to_string(),
                yes_no(e.agrees()).to_string(),
            ])?;
        }
        w.flush()?;
    }
    writeln!(
        out,
        "# {} of {} entries agree; clifford: {}",
        table.agreements(),
        table.entries.len(),
        yes_no(table.is_clifford())
    )?;

    writeln!(out, "# section: analytic-vs-oracle")?;
    {
        let mut w = csv_writer(out);
        w.write_record(["cases", "max_state_dev", "max_probability_dev", "tolerance", "result"])?;
        w.write_record([
            equivalence.cases.to_string(),
            number(equivalence.max_state_dev, d),
            number(equivalence.max_probability_dev, d),
            number(AGREEMENT_TOL, d),
            if equivalence.passed() { "pass" } else { "fail" }.to_string(),
        ])?;
        w.flush()?;
    }
    for failure in equivalence.failures.iter().take(20) {
        writeln!(out, "# mismatch: {failure}")?;
    }

    writeln!(out, "# section: closed-forms")?;
    findings_table(out, &closed, d)?;

    writeln!(out, "# section: printed-formulas")?;
    findings_table(out, &printed, d)?;

    if !equivalence.passed() {
        return Err(CliError::Inconsistent(format!(
            "analytic step disagrees with the oracle in {} of {} cases",
            equivalence.failures.len(),
            equivalence.cases
        )));
    }
    if let Some(f) = closed.iter().find(|f| !f.agrees()) {
        return Err(CliError::Inconsistent(format!(
            "closed form `{}` deviates from the oracle by {:e}",
            f.formula, f.max_abs_dev
        )));
    }
    Ok(())
}
