// Copyright 2026 The qec-workbench Authors
// SPDX-License-Identifier: Apache-2.0

//! Plain-text code files:
//!
//! ```text
//! n=3 k=1 name=bitflip3
//! [generators]
//! ZZI
//! IZZ
//! [logical_x]
//! XXX
//! [logical_z]
//! ZII
//! ```

use super::StabilizerCode;
use crate::error::{QecError, Result};
use crate::pauli::{parse_pauli, PauliOperator};

fn parse_err(line: usize, message: impl Into<String>) -> QecError {
    QecError::Parse {
        position: line,
        message: message.into(),
    }
}

pub(super) fn parse_code(text: &str) -> Result<StabilizerCode> {
    let mut header: Option<(usize, usize, String)> = None;
    let mut section: Option<usize> = None;
    let mut lists: [Vec<PauliOperator>; 3] = Default::default();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if header.is_none() {
            header = Some(parse_header(line, line_no)?);
            continue;
        }
        match line {
            "[generators]" => section = Some(0),
            "[logical_x]" => section = Some(1),
            "[logical_z]" => section = Some(2),
            _ if line.starts_with('[') => {
                return Err(parse_err(line_no, format!("unknown section {line}")))
            }
            _ => {
                let s = section.ok_or_else(|| parse_err(line_no, "operator outside a section"))?;
                let op = parse_pauli(line).map_err(|e| match e {
                    QecError::Parse { message, .. } => parse_err(line_no, message),
                    other => other,
                })?;
                lists[s].push(op);
            }
        }
    }
    let (n, k, name) = header.ok_or_else(|| parse_err(0, "missing header line"))?;
    let [generators, logical_x, logical_z] = lists;
    for op in generators.iter().chain(&logical_x).chain(&logical_z) {
        if op.num_qubits() != n {
            return Err(QecError::Dimension {
                expected: n,
                actual: op.num_qubits(),
            });
        }
    }
    Ok(StabilizerCode {
        name,
        n,
        k,
        generators,
        logical_x,
        logical_z,
    })
}

fn parse_header(line: &str, line_no: usize) -> Result<(usize, usize, String)> {
    let mut n = None;
    let mut k = None;
    let mut name = None;
    let mut rest = line;
    while !rest.is_empty() {
        let rest_trim = rest.trim_start();
        if let Some(v) = rest_trim.strip_prefix("name=") {
            name = Some(v.trim().to_string());
            break;
        }
        let (tok, tail) = rest_trim
            .split_once(char::is_whitespace)
            .unwrap_or((rest_trim, ""));
        let (key, value) = tok
            .split_once('=')
            .ok_or_else(|| parse_err(line_no, format!("expected key=value, got `{tok}`")))?;
        let num = || {
            value
                .parse::<usize>()
                .map_err(|_| parse_err(line_no, format!("`{key}` must be an integer")))
        };
        match key {
            "n" => n = Some(num()?),
            "k" => k = Some(num()?),
            _ => return Err(parse_err(line_no, format!("unknown header key `{key}`"))),
        }
        rest = tail;
    }
    match (n, k, name) {
        (Some(n), Some(k), Some(name)) if k <= n => Ok((n, k, name)),
        (Some(_), Some(_), Some(_)) => Err(parse_err(line_no, "k exceeds n")),
        _ => Err(parse_err(line_no, "header needs n=, k= and name=")),
    }
}

pub(super) fn write_code(code: &StabilizerCode) -> String {
    let mut out = format!("n={} k={} name={}\n", code.n, code.k, code.name);
    for (title, ops) in [
        ("[generators]", &code.generators),
        ("[logical_x]", &code.logical_x),
        ("[logical_z]", &code.logical_z),
    ] {
        out.push_str(title);
        out.push('\n');
        for op in ops {
            out.push_str(&op.to_string());
            out.push('\n');
        }
    }
    out
}
