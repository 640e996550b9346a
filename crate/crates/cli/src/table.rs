//! The built-in knot table.

use std::sync::OnceLock;

use knotforge::groups::PDCode;

use crate::CliError;

const DATA: &str = include_str!("../data/knots.txt");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotTableEntry {
    pub name: String,
    pub pd: PDCode,
    /// Square integer Seifert matrix; empty for the unknot.
    pub seifert: Vec<Vec<i64>>,
    pub fibered: bool,
}

fn parse_line(line: &str) -> Result<KnotTableEntry, String> {
    let fields: Vec<&str> = line.split('|').map(str::trim).collect();
    let [name, pd, seifert, fibered] = fields[..] else {
        return Err(format!("expected four fields in {line:?}"));
    };
    let pd: PDCode = pd.parse().map_err(|e| format!("{name}: {e}"))?;
    let seifert = if seifert.is_empty() {
        Vec::new()
    } else {
        seifert
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|x| x.trim().parse::<i64>().map_err(|e| format!("{name}: {e}")))
                    .collect()
            })
            .collect::<Result<Vec<Vec<i64>>, String>>()?
    };
    let fibered = match fibered {
        "fibered" => true,
        "nonfibered" => false,
        other => return Err(format!("{name}: bad fibered flag {other:?}")),
    };
    Ok(KnotTableEntry {
        name: name.to_string(),
        pd,
        seifert,
        fibered,
    })
}

/// All entries in file order.
pub fn knot_table() -> &'static [KnotTableEntry] {
    static TABLE: OnceLock<Vec<KnotTableEntry>> = OnceLock::new();
    TABLE.get_or_init(|| {
        DATA.lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| parse_line(l).expect("built-in knot table is well formed"))
            .collect()
    })
}

pub fn knot_lookup(name: &str) -> Result<KnotTableEntry, CliError> {
    knot_table()
        .iter()
        .find(|e| e.name == name)
        .cloned()
        .ok_or_else(|| CliError::Usage(format!("unknown knot {name:?}")))
}

/// A table name, or a PD code given literally as `X(..);X(..)`.
pub fn resolve_knot(arg: &str) -> Result<(String, PDCode), CliError> {
    if arg.trim_start().starts_with("X(") {
        let pd = arg
            .parse()
            .map_err(|e| CliError::Usage(format!("bad PD code: {e}")))?;
        return Ok((arg.to_string(), pd));
    }
    let e = knot_lookup(arg)?;
    Ok((e.name, e.pd))
}
