use super::FormatError;
use crate::logic::World;
use crate::solver::{SolveResult, Status};

const VALUES_PER_LINE: usize = 20;

/// Solver answer in competition style, e.g. `s SATISFIABLE` then
/// `v 1=2 2=1 0`.
pub fn write_model(result: &SolveResult) -> String {
    match (result.status, &result.model) {
        (Status::Sat, Some(w)) => {
            let mut out = String::from("s SATISFIABLE\n");
            let mut tokens: Vec<String> = w.0.iter().enumerate().map(|(v, s)| format!("{}={}", v + 1, s + 1)).collect();
            tokens.push("0".into());
            for chunk in tokens.chunks(VALUES_PER_LINE) {
                out.push('v');
                for t in chunk {
                    out.push(' ');
                    out.push_str(t);
                }
                out.push('\n');
            }
            out
        }
        (Status::Sat, None) => unreachable!("SAT result without a model"),
        (Status::Unsat, _) => "s UNSATISFIABLE\n".into(),
        (Status::UnsatUnderAssumptions, _) => "s UNSATISFIABLE UNDER ASSUMPTIONS\n".into(),
        (Status::Unknown, _) => "s UNKNOWN\n".into(),
    }
}

pub fn exit_code(status: Status) -> i32 {
    match status {
        Status::Sat => 10,
        Status::Unsat | Status::UnsatUnderAssumptions => 20,
        Status::Unknown => 0,
    }
}

/// Reads back the output of [`write_model`], ignoring `c` lines.
pub fn parse_model(text: &str) -> Result<(Status, Option<World>), FormatError> {
    let mut status = None;
    let mut values: Vec<(usize, usize)> = Vec::new();
    let mut terminated = false;
    let mut last = 0;
    for (lno, line) in super::content_lines(text) {
        last = lno;
        if let Some(rest) = line.strip_prefix("s ") {
            status = Some(match rest.trim() {
                "SATISFIABLE" => Status::Sat,
                "UNSATISFIABLE" => Status::Unsat,
                "UNSATISFIABLE UNDER ASSUMPTIONS" => Status::UnsatUnderAssumptions,
                "UNKNOWN" => Status::Unknown,
                other => {
                    return Err(FormatError::MalformedHeader {
                        line: lno,
                        msg: format!("unknown status '{other}'"),
                    })
                }
            });
        } else if let Some(rest) = line.strip_prefix('v') {
            for tok in rest.split_whitespace() {
                if tok == "0" {
                    terminated = true;
                    continue;
                }
                let bad = || FormatError::InvalidToken {
                    line: lno,
                    token: tok.to_string(),
                };
                let (v, s) = tok.split_once('=').ok_or_else(bad)?;
                let v: usize = v.parse().map_err(|_| bad())?;
                let s: usize = s.parse().map_err(|_| bad())?;
                if v == 0 || s == 0 {
                    return Err(bad());
                }
                values.push((v - 1, s - 1));
            }
        } else {
            return Err(FormatError::InvalidToken {
                line: lno,
                token: line.to_string(),
            });
        }
    }
    let status = status.ok_or(FormatError::MalformedHeader {
        line: last.max(1),
        msg: "missing status line".into(),
    })?;
    if status != Status::Sat {
        return Ok((status, None));
    }
    if !terminated {
        return Err(FormatError::MissingTerminator { line: last });
    }
    let mut world = vec![usize::MAX; values.len()];
    for (v, s) in values {
        if v >= world.len() {
            return Err(FormatError::VariableOutOfRange {
                line: last,
                var: v + 1,
                count: world.len(),
            });
        }
        world[v] = s;
    }
    Ok((status, Some(World(world))))
}
