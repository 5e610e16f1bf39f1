//! Line-oriented gate-list files.
//!
//! ```text
//! # qprep v1 n=2 qubits=7
//! # registers pe=0,1,2,3,4 data=5,6 ancilla=-
//! RY theta=1.5707963267948966e0 q=5 c=- p=1 m=2
//! H q=0
//! DIAG j=16 reg=5 c=0 phases=0.0000000000000000e0,3.1415926535897931e0 m=1 p=0,1
//! QFT reg=0,1,2,3,4 inv=1
//! CZP l=-2 q=5,6
//! ```
//!
//! Angles are written with 17 significant digits. Angles of the form
//! `2π·p/2^m` additionally carry `p=` and `m=`, and the parser rebuilds such
//! angles from the integers rather than from the decimal text.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use qprep_core::prep::RegisterMap;
use qprep_core::sim::{Circuit, Gate};

const MAGIC: &str = "qprep";
const VERSION: &str = "v1";
/// Finest level detected as dyadic when writing. Any finite float is a
/// dyadic rational at some level, so detection stops here.
const MAX_DETECTED_LEVEL: u32 = 48;
/// Finest level accepted in `m=` annotations.
const MAX_ANNOTATED_LEVEL: u32 = 62;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("missing `# {MAGIC} {VERSION}` header")]
    MissingHeader,
}

fn line_err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Line {
        line,
        message: message.into(),
    }
}

/// A parsed or to-be-written gate list.
#[derive(Debug, Clone, PartialEq)]
pub struct GateList {
    /// Width of the data register.
    pub n: usize,
    pub num_qubits: usize,
    pub registers: Option<RegisterMap>,
    pub gates: Vec<Gate>,
}

impl GateList {
    pub fn circuit(&self) -> qprep_core::Result<Circuit> {
        Circuit::from_gates(self.num_qubits, self.gates.clone())
    }
}

/// `(p, m)` with `angle == 2π·p/2^m` exactly and `m` minimal.
fn dyadic(angle: f64) -> Option<(i64, u32)> {
    if !angle.is_finite() {
        return None;
    }
    for m in 0..=MAX_DETECTED_LEVEL {
        let scaled = angle / TAU * (1u64 << m) as f64;
        if scaled.fract() != 0.0 || scaled.abs() >= (1u64 << 53) as f64 {
            continue;
        }
        let p = scaled as i64;
        if dyadic_angle(p, m) == angle {
            return Some((p, m));
        }
    }
    None
}

fn dyadic_angle(p: i64, m: u32) -> f64 {
    TAU * p as f64 / (1u64 << m) as f64
}

/// Common level and numerators if every angle is dyadic.
fn dyadic_all(angles: &[f64]) -> Option<(u32, Vec<i64>)> {
    let each: Vec<(i64, u32)> = angles.iter().map(|&a| dyadic(a)).collect::<Option<_>>()?;
    let m = each.iter().map(|&(_, m)| m).max().unwrap_or(0);
    let nums = each.iter().map(|&(p, k)| p << (m - k)).collect::<Vec<_>>();
    let rebuilt = nums.iter().map(|&p| dyadic_angle(p, m));
    rebuilt
        .zip(angles)
        .all(|(r, a)| r == *a)
        .then_some((m, nums))
}

fn float(v: f64) -> String {
    format!("{v:.16e}")
}

fn list<T: ToString>(items: &[T]) -> String {
    if items.is_empty() {
        "-".into()
    } else {
        items.iter().map(T::to_string).collect::<Vec<_>>().join(",")
    }
}

pub fn format_gate(gate: &Gate) -> String {
    match gate {
        Gate::Hadamard { target } => format!("H q={target}"),
        Gate::PauliX { target } => format!("X q={target}"),
        Gate::RotationY {
            angle,
            target,
            controls,
        } => {
            let mut s = format!("RY theta={} q={target} c={}", float(*angle), list(controls));
            if let Some((p, m)) = dyadic(*angle) {
                let _ = write!(s, " p={p} m={m}");
            }
            s
        }
        Gate::ControlledZPow { level, qubits } => format!("CZP l={level} q={}", list(qubits)),
        Gate::DiagonalOracle {
            register,
            phases,
            power,
            controls,
        } => {
            let values: Vec<String> = phases.iter().map(|&p| float(p)).collect();
            let mut s = format!(
                "DIAG j={power} reg={} c={} phases={}",
                list(register),
                list(controls),
                values.join(",")
            );
            if let Some((m, nums)) = dyadic_all(phases) {
                let _ = write!(s, " m={m} p={}", list(&nums));
            }
            s
        }
        Gate::Qft { register, inverse } => {
            format!("QFT reg={} inv={}", list(register), u8::from(*inverse))
        }
        Gate::Swap { a, b } => format!("SWAP q={a},{b}"),
    }
}

pub fn write_gate_list(list_: &GateList) -> String {
    let mut out = format!(
        "# {MAGIC} {VERSION} n={} qubits={}\n",
        list_.n, list_.num_qubits
    );
    if let Some(r) = &list_.registers {
        let ancilla = r.ancilla.map_or("-".to_string(), |a| a.to_string());
        let _ = writeln!(
            out,
            "# registers pe={} data={} ancilla={ancilla}",
            list(&r.pe),
            list(&r.data)
        );
    }
    for g in &list_.gates {
        out.push_str(&format_gate(g));
        out.push('\n');
    }
    out
}

struct Fields<'a> {
    line: usize,
    pairs: Vec<(&'a str, &'a str)>,
}

impl<'a> Fields<'a> {
    fn new(line: usize, tokens: impl Iterator<Item = &'a str>) -> Result<Self, ParseError> {
        let mut pairs = Vec::new();
        for tok in tokens {
            let (k, v) = tok
                .split_once('=')
                .ok_or_else(|| line_err(line, format!("expected key=value, got `{tok}`")))?;
            if pairs.iter().any(|&(seen, _)| seen == k) {
                return Err(line_err(line, format!("duplicate key `{k}`")));
            }
            pairs.push((k, v));
        }
        Ok(Self { line, pairs })
    }

    fn get(&self, key: &str) -> Option<&'a str> {
        self.pairs.iter().find(|&&(k, _)| k == key).map(|&(_, v)| v)
    }

    fn req(&self, key: &str) -> Result<&'a str, ParseError> {
        self.get(key)
            .ok_or_else(|| line_err(self.line, format!("missing `{key}=`")))
    }

    fn num<T: std::str::FromStr>(&self, key: &str) -> Result<T, ParseError> {
        let v = self.req(key)?;
        v.parse()
            .map_err(|_| line_err(self.line, format!("bad value `{v}` for `{key}`")))
    }

    fn list<T: std::str::FromStr>(&self, key: &str) -> Result<Vec<T>, ParseError> {
        let v = self.req(key)?;
        self.parse_list(key, v)
    }

    fn parse_list<T: std::str::FromStr>(&self, key: &str, v: &str) -> Result<Vec<T>, ParseError> {
        if v == "-" {
            return Ok(Vec::new());
        }
        v.split(',')
            .map(|s| {
                s.parse()
                    .map_err(|_| line_err(self.line, format!("bad entry `{s}` in `{key}`")))
            })
            .collect()
    }

    fn only(&self, allowed: &[&str]) -> Result<(), ParseError> {
        match self.pairs.iter().find(|(k, _)| !allowed.contains(k)) {
            Some((k, _)) => Err(line_err(self.line, format!("unknown key `{k}`"))),
            None => Ok(()),
        }
    }

    fn level(&self) -> Result<Option<u32>, ParseError> {
        match self.get("m") {
            None => Ok(None),
            Some(_) => {
                let m: u32 = self.num("m")?;
                if m > MAX_ANNOTATED_LEVEL {
                    return Err(line_err(self.line, format!("level m={m} too large")));
                }
                Ok(Some(m))
            }
        }
    }
}

fn parse_gate(line: usize, text: &str) -> Result<Gate, ParseError> {
    let mut tokens = text.split_whitespace();
    let op = tokens.next().unwrap_or_default();
    let f = Fields::new(line, tokens)?;
    let gate = match op {
        "H" => {
            f.only(&["q"])?;
            Gate::Hadamard {
                target: f.num("q")?,
            }
        }
        "X" => {
            f.only(&["q"])?;
            Gate::PauliX {
                target: f.num("q")?,
            }
        }
        "RY" => {
            f.only(&["theta", "q", "c", "p", "m"])?;
            let written: f64 = f.num("theta")?;
            let angle = match (f.get("p"), f.level()?) {
                (Some(_), Some(m)) => dyadic_angle(f.num("p")?, m),
                (None, None) => written,
                _ => return Err(line_err(line, "`p=` and `m=` must appear together")),
            };
            Gate::RotationY {
                angle,
                target: f.num("q")?,
                controls: f.list("c")?,
            }
        }
        "CZP" => {
            f.only(&["l", "q"])?;
            Gate::ControlledZPow {
                level: f.num("l")?,
                qubits: f.list("q")?,
            }
        }
        "DIAG" => {
            f.only(&["j", "reg", "c", "phases", "m", "p"])?;
            let written: Vec<f64> = f.list("phases")?;
            let phases = match (f.get("p"), f.level()?) {
                (Some(v), Some(m)) => {
                    let nums: Vec<i64> = f.parse_list("p", v)?;
                    if nums.len() != written.len() {
                        return Err(line_err(line, "`p=` and `phases=` differ in length"));
                    }
                    nums.into_iter().map(|p| dyadic_angle(p, m)).collect()
                }
                (None, None) => written,
                _ => return Err(line_err(line, "`p=` and `m=` must appear together")),
            };
            Gate::DiagonalOracle {
                register: f.list("reg")?,
                phases,
                power: f.num("j")?,
                controls: f.list("c")?,
            }
        }
        "QFT" => {
            f.only(&["reg", "inv"])?;
            let inverse = match f.req("inv")? {
                "0" => false,
                "1" => true,
                v => return Err(line_err(line, format!("bad value `{v}` for `inv`"))),
            };
            Gate::Qft {
                register: f.list("reg")?,
                inverse,
            }
        }
        "SWAP" => {
            f.only(&["q"])?;
            let q: Vec<usize> = f.list("q")?;
            if q.len() != 2 {
                return Err(line_err(line, "SWAP needs exactly two qubits"));
            }
            Gate::Swap { a: q[0], b: q[1] }
        }
        other => return Err(line_err(line, format!("unknown gate `{other}`"))),
    };
    Ok(gate)
}

fn parse_header(text: &str) -> Result<(usize, usize), ParseError> {
    let rest = text
        .strip_prefix('#')
        .map(str::trim)
        .and_then(|r| r.strip_prefix(MAGIC))
        .map(str::trim)
        .and_then(|r| r.strip_prefix(VERSION))
        .ok_or(ParseError::MissingHeader)?;
    let f = Fields::new(1, rest.split_whitespace())?;
    f.only(&["n", "qubits"])?;
    Ok((f.num("n")?, f.num("qubits")?))
}

fn parse_registers(line: usize, text: &str) -> Result<RegisterMap, ParseError> {
    let f = Fields::new(line, text.split_whitespace())?;
    f.only(&["pe", "data", "ancilla"])?;
    let ancilla = match f.req("ancilla")? {
        "-" => None,
        _ => Some(f.num("ancilla")?),
    };
    Ok(RegisterMap {
        pe: f.list("pe")?,
        data: f.list("data")?,
        ancilla,
    })
}

/// Parses a gate list and validates every gate against the declared width.
pub fn parse_gate_list(text: &str) -> Result<GateList, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let (_, first) = lines.next().ok_or(ParseError::MissingHeader)?;
    let (n, num_qubits) = parse_header(first)?;
    let mut registers = None;
    let mut gates = Vec::new();
    for (no, line) in lines {
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(r) = comment.trim().strip_prefix("registers") {
                registers = Some(parse_registers(no, r)?);
            }
            continue;
        }
        let gate = parse_gate(no, line)?;
        gate.validate(num_qubits)
            .map_err(|e| line_err(no, e.to_string()))?;
        gates.push(gate);
    }
    if let Some(r) = &registers {
        if r.total() != num_qubits || r.data.len() != n {
            return Err(line_err(2, "register map does not match the header"));
        }
    }
    Ok(GateList {
        n,
        num_qubits,
        registers,
        gates,
    })
}
