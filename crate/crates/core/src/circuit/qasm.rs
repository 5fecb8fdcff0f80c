//! OpenQASM 2.0 emission and a parser for the subset we emit.

use std::f64::consts::PI;
use std::fmt::Write;

use super::Circuit;
use crate::error::{Error, Result};
use crate::statevector::GateOp;

const REGISTER: &str = "q";

/// Emits a decomposed circuit as OpenQASM 2.0 with a single register `q`.
/// Angles use Rust's shortest round-trip float formatting, so
/// `parse_qasm(&export_qasm(c)?)` reproduces `c` exactly.
pub fn export_qasm(circuit: &Circuit) -> Result<String> {
    let mut out = String::new();
    out.push_str("OPENQASM 2.0;\n");
    out.push_str("include \"qelib1.inc\";\n");
    let _ = writeln!(out, "qreg {REGISTER}[{}];", circuit.n_qubits());
    for op in circuit.ops() {
        let line = match *op {
            GateOp::H(q) | GateOp::X(q) | GateOp::T(q) | GateOp::Tdg(q) | GateOp::S(q) => {
                format!("{} {REGISTER}[{q}];", op.name())
            }
            GateOp::Ry { target, theta } => format!("ry({theta:?}) {REGISTER}[{target}];"),
            GateOp::Cnot { control, target } => {
                format!("cx {REGISTER}[{control}],{REGISTER}[{target}];")
            }
            _ => return Err(Error::UnsupportedGate(op.name().to_string())),
        };
        out.push_str(&line);
        out.push('\n');
    }
    Ok(out)
}

/// Parses OpenQASM 2.0 text containing one quantum register and the gates
/// `h x t tdg s ry cx swap ccx`. `barrier`, `creg` and `measure` statements
/// are skipped.
pub fn parse_qasm(text: &str) -> Result<Circuit> {
    let mut circuit: Option<Circuit> = None;
    let mut register = String::new();
    let mut saw_header = false;

    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let line = raw.split("//").next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        for stmt in line.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            if !saw_header {
                if stmt != "OPENQASM 2.0" {
                    return Err(err(format!("expected `OPENQASM 2.0;`, found `{stmt}`")));
                }
                saw_header = true;
                continue;
            }
            let (head, rest) = split_head(stmt);
            match head {
                "include" => continue,
                "creg" | "barrier" | "measure" => continue,
                "qreg" => {
                    if circuit.is_some() {
                        return Err(err("only one qreg is supported".into()));
                    }
                    let (name, size) = parse_qubit_ref(rest).map_err(&err)?;
                    register = name;
                    circuit = Some(Circuit::new(size));
                }
                _ => {
                    let circ = circuit
                        .as_mut()
                        .ok_or_else(|| err("gate before qreg declaration".into()))?;
                    let op = parse_gate(head, rest, &register).map_err(&err)?;
                    circ.push(op).map_err(|e| err(e.to_string()))?;
                }
            }
        }
    }
    if !saw_header {
        return Err(Error::Parse {
            line: 0,
            message: "empty input".into(),
        });
    }
    circuit.ok_or(Error::Parse {
        line: 0,
        message: "no qreg declared".into(),
    })
}

/// Splits `name(args) operands` or `name operands` into `(name(args), operands)`.
fn split_head(stmt: &str) -> (&str, &str) {
    let end = match stmt.find('(') {
        Some(open)
            if stmt[..open]
                .chars()
                .all(|c| c.is_alphanumeric() || c == '_') =>
        {
            stmt[open..]
                .find(')')
                .map_or(stmt.len(), |close| open + close + 1)
        }
        _ => stmt.find(char::is_whitespace).unwrap_or(stmt.len()),
    };
    (stmt[..end].trim(), stmt[end..].trim())
}

fn parse_qubit_ref(s: &str) -> std::result::Result<(String, usize), String> {
    let s = s.trim();
    let open = s
        .find('[')
        .ok_or_else(|| format!("expected `name[index]`, found `{s}`"))?;
    let close = s
        .rfind(']')
        .ok_or_else(|| format!("missing `]` in `{s}`"))?;
    let index = s[open + 1..close]
        .trim()
        .parse()
        .map_err(|_| format!("bad index in `{s}`"))?;
    Ok((s[..open].trim().to_string(), index))
}

fn parse_gate(head: &str, operands: &str, register: &str) -> std::result::Result<GateOp, String> {
    let (name, param) = match head.find('(') {
        Some(open) => {
            let inner = head[open + 1..]
                .strip_suffix(')')
                .ok_or("unclosed parameter list")?;
            (&head[..open], Some(eval_angle(inner)?))
        }
        None => (head, None),
    };
    let qubits = operands
        .split(',')
        .map(|q| {
            let (reg, idx) = parse_qubit_ref(q)?;
            if reg != register {
                return Err(format!("unknown register `{reg}`"));
            }
            Ok(idx)
        })
        .collect::<std::result::Result<Vec<usize>, String>>()?;

    let arity = |n: usize| {
        if qubits.len() == n {
            Ok(())
        } else {
            Err(format!("`{name}` takes {n} qubit(s), got {}", qubits.len()))
        }
    };
    let no_param = || match param {
        None => Ok(()),
        Some(_) => Err(format!("`{name}` takes no parameter")),
    };
    let op = match name {
        "h" | "x" | "t" | "tdg" | "s" => {
            arity(1)?;
            no_param()?;
            let q = qubits[0];
            match name {
                "h" => GateOp::H(q),
                "x" => GateOp::X(q),
                "t" => GateOp::T(q),
                "tdg" => GateOp::Tdg(q),
                _ => GateOp::S(q),
            }
        }
        "ry" => {
            arity(1)?;
            let theta = param.ok_or("`ry` needs an angle")?;
            GateOp::Ry {
                target: qubits[0],
                theta,
            }
        }
        "cx" | "CX" => {
            arity(2)?;
            no_param()?;
            GateOp::Cnot {
                control: qubits[0],
                target: qubits[1],
            }
        }
        "swap" => {
            arity(2)?;
            no_param()?;
            GateOp::Swap(qubits[0], qubits[1])
        }
        "ccx" => {
            arity(3)?;
            no_param()?;
            GateOp::Toffoli {
                controls: [qubits[0], qubits[1]],
                target: qubits[2],
            }
        }
        other => return Err(format!("unsupported gate `{other}`")),
    };
    Ok(op)
}

/// Evaluates a parameter expression: numbers, `pi`, unary minus and the
/// binary operators `+ - * /` with the usual precedence and parentheses.
fn eval_angle(expr: &str) -> std::result::Result<f64, String> {
    let tokens = tokenize(expr)?;
    let mut pos = 0;
    let value = parse_sum(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(format!("trailing input in `{expr}`"));
    }
    Ok(value)
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(f64),
    Op(char),
}

fn tokenize(expr: &str) -> std::result::Result<Vec<Token>, String> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = expr.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        if ch.is_whitespace() {
            i += 1;
        } else if "+-*/()".contains(ch) {
            tokens.push(Token::Op(ch));
            i += 1;
        } else if ch.is_ascii_digit() || ch == '.' {
            let start = i;
            while i < chars.len() {
                let c = chars[i];
                let exponent_sign =
                    (c == '+' || c == '-') && i > start && matches!(chars[i - 1], 'e' | 'E');
                if c.is_ascii_digit() || c == '.' || c == 'e' || c == 'E' || exponent_sign {
                    i += 1;
                } else {
                    break;
                }
            }
            let text: String = chars[start..i].iter().collect();
            tokens.push(Token::Num(
                text.parse().map_err(|_| format!("bad number `{text}`"))?,
            ));
        } else if chars[i..].starts_with(&['p', 'i']) {
            tokens.push(Token::Num(PI));
            i += 2;
        } else {
            return Err(format!("unexpected character `{ch}` in `{expr}`"));
        }
    }
    Ok(tokens)
}

fn parse_sum(tokens: &[Token], pos: &mut usize) -> std::result::Result<f64, String> {
    let mut value = parse_product(tokens, pos)?;
    while let Some(Token::Op(op @ ('+' | '-'))) = tokens.get(*pos) {
        *pos += 1;
        let rhs = parse_product(tokens, pos)?;
        value = if *op == '+' { value + rhs } else { value - rhs };
    }
    Ok(value)
}

fn parse_product(tokens: &[Token], pos: &mut usize) -> std::result::Result<f64, String> {
    let mut value = parse_unary(tokens, pos)?;
    while let Some(Token::Op(op @ ('*' | '/'))) = tokens.get(*pos) {
        *pos += 1;
        let rhs = parse_unary(tokens, pos)?;
        value = if *op == '*' { value * rhs } else { value / rhs };
    }
    Ok(value)
}

fn parse_unary(tokens: &[Token], pos: &mut usize) -> std::result::Result<f64, String> {
    match tokens.get(*pos) {
        Some(Token::Op('-')) => {
            *pos += 1;
            Ok(-parse_unary(tokens, pos)?)
        }
        Some(Token::Op('+')) => {
            *pos += 1;
            parse_unary(tokens, pos)
        }
        Some(Token::Op('(')) => {
            *pos += 1;
            let value = parse_sum(tokens, pos)?;
            if tokens.get(*pos) != Some(&Token::Op(')')) {
                return Err("missing `)`".into());
            }
            *pos += 1;
            Ok(value)
        }
        Some(Token::Num(v)) => {
            *pos += 1;
            Ok(*v)
        }
        other => Err(format!("unexpected token {other:?}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_hadamard() {
        let c = Circuit::from_ops(1, [GateOp::H(0)]).unwrap();
        let text = export_qasm(&c).unwrap();
        assert!(text.starts_with("OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[1];\n"));
        assert!(text.contains("h q[0];"));
    }

    #[test]
    fn undecomposed_gate_is_rejected() {
        let c = Circuit::from_ops(2, [GateOp::Swap(0, 1)]).unwrap();
        assert_eq!(export_qasm(&c), Err(Error::UnsupportedGate("swap".into())));
    }

    #[test]
    fn angle_expressions() {
        assert_eq!(eval_angle("pi/2").unwrap(), PI / 2.0);
        assert_eq!(eval_angle("-pi/4").unwrap(), -PI / 4.0);
        assert_eq!(eval_angle("2*pi - 1e-3").unwrap(), 2.0 * PI - 1e-3);
        assert_eq!(eval_angle("-(1.5+0.5)*2").unwrap(), -4.0);
        assert!(eval_angle("pi pi").is_err());
    }

    #[test]
    fn parses_foreign_formatting() {
        let text = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n// comment\nqreg r[3];\ncreg c[3];\n\
                    ry(-pi/2) r[1]; cx r[0], r[2];\nccx r[0],r[1],r[2];\nmeasure r[0] -> c[0];\n";
        let c = parse_qasm(text).unwrap();
        assert_eq!(c.n_qubits(), 3);
        assert_eq!(
            c.ops(),
            &[
                GateOp::Ry {
                    target: 1,
                    theta: -PI / 2.0
                },
                GateOp::Cnot {
                    control: 0,
                    target: 2
                },
                GateOp::Toffoli {
                    controls: [0, 1],
                    target: 2
                },
            ]
        );
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let text = "OPENQASM 2.0;\nqreg q[2];\nfoo q[0];\n";
        assert!(matches!(
            parse_qasm(text),
            Err(Error::Parse { line: 3, .. })
        ));
        let text = "OPENQASM 2.0;\nqreg q[2];\nh q[2];\n";
        assert!(matches!(
            parse_qasm(text),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_qasm("qreg q[1];"),
            Err(Error::Parse { line: 1, .. })
        ));
    }
}
