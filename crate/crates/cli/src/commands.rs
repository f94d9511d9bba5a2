use std::fmt::Write as _;
use std::io::Read;

use serde::Serialize;
use serde_json::json;
use solgrowth::automata::Automaton;
use solgrowth::oracle::{
    ball_bfs_limited, class_minimum, compare_series, parry_series, DEFAULT_MAX_ELEMENTS,
};
use solgrowth::sol_language::{
    acceptor_rn_prime, acceptor_rni, build_ln, sol_pipeline, PipelineOverrides,
};
use solgrowth::solgroup::{geodesic_length, geodesic_word};
use solgrowth::{Error, GroupParams, GroupWord, LaurentPoly, SolConstants, XElement};

use crate::{Command, Format};

pub const EXIT_INVALID: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;
pub const EXIT_MISMATCH: u8 = 4;

/// A failure reported as `{"kind": ..., "message": ...}` on standard error.
#[derive(Debug)]
pub struct CliError {
    kind: String,
    message: String,
    /// Limit and estimated requirement of a resource refusal.
    limit: Option<(u64, Option<u64>)>,
    status: u8,
}

impl CliError {
    pub fn usage(message: String) -> Self {
        CliError {
            kind: "usage".into(),
            message,
            limit: None,
            status: EXIT_INVALID,
        }
    }

    fn invalid(kind: &str, message: impl Into<String>) -> Self {
        CliError {
            kind: kind.into(),
            message: message.into(),
            limit: None,
            status: EXIT_INVALID,
        }
    }

    pub fn status(&self) -> u8 {
        self.status
    }

    pub fn to_json(&self) -> String {
        let mut v = json!({ "kind": self.kind, "message": self.message });
        if let Some((limit, estimate)) = self.limit {
            v["limit"] = json!(limit);
            v["estimate"] = json!(estimate);
        }
        v.to_string()
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::ResourceLimit { .. } | Error::Overflow(_) => EXIT_RESOURCE,
            _ => EXIT_INVALID,
        };
        let limit = match e {
            Error::ResourceLimit {
                limit, estimate, ..
            } => Some((limit, estimate)),
            _ => None,
        };
        CliError {
            kind: e.kind().into(),
            message: e.to_string(),
            limit,
            status,
        }
    }
}

pub struct Output {
    pub text: String,
    pub status: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, status: 0 }
    }
}

type CliResult = Result<Output, CliError>;

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("output serialises")
}

fn no_csv(cmd: &str) -> CliError {
    CliError::invalid("unsupported_format", format!("{cmd} has no CSV output"))
}

fn parse_word(s: &str) -> Result<GroupWord, CliError> {
    Ok(s.parse::<GroupWord>()?)
}

pub fn run(cmd: &Command, format: Format) -> CliResult {
    match cmd {
        Command::Eval { trace, word } => eval(*trace, word, format),
        Command::Geodesic {
            poly,
            height,
            trace,
        } => geodesic(poly, *height, *trace, format),
        Command::Equal { trace, left, right } => equal(*trace, left, right, format),
        Command::Ball {
            trace,
            gens,
            radius,
            max_elements,
        } => ball(*trace, gens, *radius, *max_elements, format),
        Command::SeriesFsa { file, terms } => series_fsa(file, *terms, format),
        Command::BuildLn { n, padded } => {
            automaton_out(&build_ln(*n, !*padded)?, format, "build-ln")
        }
        Command::BuildAcceptor { trace, n, i } => {
            let m = match i {
                Some(i) => acceptor_rni(*n, *i, *trace)?,
                None => acceptor_rn_prime(*n, *trace)?,
            };
            automaton_out(&m, format, "build-acceptor")
        }
        Command::Pipeline { trace, overrides } => {
            let o = PipelineOverrides {
                n: overrides.n,
                k: overrides.k,
                i: overrides.i,
            };
            let rep = sol_pipeline(*trace, Some(o))?;
            match format {
                Format::Json => Ok(Output::ok(to_json(&rep))),
                Format::Text => Ok(Output::ok(format!(
                    "scale {:?}\nparams {:?}\nstates {}\nseries {}\n",
                    rep.scale,
                    rep.params,
                    rep.cross_section.num_states(),
                    rep.series
                ))),
                Format::Csv => Err(no_csv("pipeline")),
            }
        }
        Command::VerifyParry {
            half_trace,
            radius,
            max_elements,
        } => verify_parry(*half_trace, *radius, *max_elements, format),
        Command::Constants { trace, n } => constants(*trace, *n, format),
    }
}

fn eval(trace: i64, word: &str, format: Format) -> CliResult {
    let p = GroupParams::new(trace)?;
    let w = parse_word(word)?;
    let x = w.eval();
    let g = p.eval_element(&w)?;
    Ok(Output::ok(match format {
        Format::Json => to_json(&json!({
            "trace": trace,
            "word": w.to_string(),
            "type": x.utype.to_string(),
            "height": x.height,
            "element": g,
        })),
        Format::Text => format!(
            "type {}\nheight {}\nelement {:?} {}\n",
            x.utype, x.height, g.x, g.height
        ),
        Format::Csv => format!(
            "type,height,x0,x1\n{},{},{},{}\n",
            x.utype, x.height, g.x[0], g.x[1]
        ),
    }))
}

fn geodesic(poly: &str, height: i64, trace: Option<i64>, format: Format) -> CliResult {
    let p: LaurentPoly = poly.parse()?;
    let mut x = XElement::new(p, height);
    if let Some(t) = trace {
        x = class_minimum(&x, t)?.representative;
    }
    let w = geodesic_word(&x);
    let len = geodesic_length(&x);
    Ok(Output::ok(match format {
        Format::Json => to_json(&json!({
            "type": x.utype.to_string(),
            "height": x.height,
            "word": w.to_string(),
            "length": len,
        })),
        Format::Text => format!("word {w}\nlength {len}\n"),
        Format::Csv => format!("word,length\n{w},{len}\n"),
    }))
}

fn equal(trace: i64, left: &str, right: &str, format: Format) -> CliResult {
    let p = GroupParams::new(trace)?;
    let eq = p.equal_words(&parse_word(left)?, &parse_word(right)?)?;
    Ok(Output::ok(match format {
        Format::Json => {
            to_json(&json!({ "trace": trace, "left": left, "right": right, "equal": eq }))
        }
        Format::Text => format!("{eq}\n"),
        Format::Csv => format!("equal\n{eq}\n"),
    }))
}

fn ball(
    trace: i64,
    gens: &[String],
    radius: u32,
    max_elements: Option<u64>,
    format: Format,
) -> CliResult {
    let gens = gens
        .iter()
        .map(|g| parse_word(g.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    let counts = ball_bfs_limited(
        trace,
        &gens,
        radius,
        max_elements.unwrap_or(DEFAULT_MAX_ELEMENTS),
    )?;
    Ok(Output::ok(match format {
        Format::Json => to_json(&counts),
        Format::Csv => counts.to_csv(),
        Format::Text => counts
            .counts
            .iter()
            .enumerate()
            .fold(String::new(), |mut s, (r, c)| {
                let _ = writeln!(s, "{r} {c}");
                s
            }),
    }))
}

fn read_input(file: &str) -> Result<String, CliError> {
    let res = if file == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map(|_| s)
    } else {
        std::fs::read_to_string(file)
    };
    res.map_err(|e| CliError::invalid("io", format!("{file}: {e}")))
}

fn series_fsa(file: &str, terms: Option<usize>, format: Format) -> CliResult {
    let m = Automaton::from_json_str(&read_input(file)?)?;
    let series = m.growth_series()?;
    let coeffs = terms.map(|n| series.coefficients(n)).transpose()?;
    Ok(Output::ok(match format {
        Format::Json => match &coeffs {
            Some(c) => to_json(&json!({
                "numerator": series.numerator,
                "denominator": series.denominator,
                "coefficients": c,
            })),
            None => to_json(&series),
        },
        Format::Text => {
            let mut s = format!("{series}\n");
            if let Some(c) = &coeffs {
                let list: Vec<String> = c.iter().map(|v| v.to_string()).collect();
                let _ = writeln!(s, "{}", list.join(" "));
            }
            s
        }
        Format::Csv => {
            let c = coeffs.ok_or_else(|| {
                CliError::invalid("usage", "CSV output of series-fsa needs --terms")
            })?;
            c.iter()
                .enumerate()
                .fold(String::from("degree,count\n"), |mut s, (d, v)| {
                    let _ = writeln!(s, "{d},{v}");
                    s
                })
        }
    }))
}

fn automaton_out(m: &Automaton, format: Format, cmd: &str) -> CliResult {
    match format {
        Format::Json => Ok(Output::ok(m.to_json_string())),
        Format::Text => Ok(Output::ok(format!(
            "tapes {}\nstates {}\ntransitions {}\nfinal {}\n",
            m.tapes(),
            m.num_states(),
            m.num_transitions(),
            m.finals().count()
        ))),
        Format::Csv => Err(no_csv(cmd)),
    }
}

fn verify_parry(
    half_trace: u32,
    radius: u32,
    max_elements: Option<u64>,
    format: Format,
) -> CliResult {
    let series = parry_series(half_trace)?;
    let trace = 2 * half_trace as i64;
    let gens: Vec<GroupWord> = ["a", "taT", "t"]
        .iter()
        .map(|s| s.parse().expect("valid word"))
        .collect();
    let counts = ball_bfs_limited(
        trace,
        &gens,
        radius,
        max_elements.unwrap_or(DEFAULT_MAX_ELEMENTS),
    )?;
    let report = compare_series(&series, &counts)?;
    let text = match format {
        Format::Json => report.to_json(),
        Format::Csv => (0..report.observed.len()).fold(
            String::from("radius,expected,observed,diff\n"),
            |mut s, r| {
                let _ = writeln!(
                    s,
                    "{r},{},{},{}",
                    report.expected[r], report.observed[r], report.diffs[r]
                );
                s
            },
        ),
        Format::Text => format!(
            "series {}\nradius {}\nexact match {}\nnumerator identity {}\nconvention {:?}\n",
            report.series,
            report.radius,
            report.exact_match,
            report.numerator_identity_holds,
            report.convention
        ),
    };
    let status = if report.exact_match && report.numerator_identity_holds {
        0
    } else {
        EXIT_MISMATCH
    };
    Ok(Output { text, status })
}

fn constants(trace: i64, n: Option<u64>, format: Format) -> CliResult {
    let base = SolConstants::new(trace, 0)?;
    let c = SolConstants::new(trace, n.unwrap_or(base.n))?;
    let rows = [
        ("B", c.b),
        ("L", c.l),
        ("K", c.k),
        ("N", c.n),
        ("fellow_constant", c.fellow_constant),
        ("c_n", c.c_n),
        ("C", c.c),
    ];
    Ok(Output::ok(match format {
        Format::Json => to_json(&c),
        Format::Csv => rows
            .iter()
            .fold(String::from("name,value\n"), |mut s, (k, v)| {
                let _ = writeln!(s, "{k},{v}");
                s
            }),
        Format::Text => rows.iter().fold(String::new(), |mut s, (k, v)| {
            let _ = writeln!(s, "{k} {v}");
            s
        }),
    }))
}
