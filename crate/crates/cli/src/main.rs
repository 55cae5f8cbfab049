use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cofinite_core::graded::{CofiniteRoute, DEFAULT_MAX_DEGREE};
use cofinite_core::perm::find_transposition;
use cofinite_core::rational::parse_rational;
use cofinite_core::subalgebra::{BoundsSpec, GenSetFile};
use cofinite_core::*;
use serde_json::{json, Map, Value};

/// Exact computations with differential operators on the affine line.
#[derive(Parser)]
#[command(name = "cofinite", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GenSource {
    /// JSON generator file `{"generators": [{"name", "expr"}], "bounds": {..}}`
    #[arg(long)]
    gens_file: Option<PathBuf>,
    /// Generator expression; repeatable, named g1, g2, ...
    #[arg(long = "gen", allow_hyphen_values = true)]
    gens: Vec<String>,
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long)]
    word_length: Option<u32>,
    #[arg(long)]
    x_degree_cap: Option<u32>,
    #[arg(long)]
    order_cap: Option<u32>,
}

#[derive(Args)]
struct CenterArg {
    /// Center `a` of the cover `t = (x - a)^m`
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    center: String,
}

#[derive(Args)]
struct TripleArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long)]
    m: u32,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    p: String,
}

#[derive(Subcommand)]
enum Command {
    /// Product of operators, left to right
    Mul {
        #[arg(required = true, num_args = 1.., allow_hyphen_values = true)]
        factors: Vec<String>,
    },
    /// Apply an operator to a polynomial
    Apply {
        #[arg(allow_hyphen_values = true)]
        op: String,
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// Principal symbol and order
    Symbol {
        #[arg(allow_hyphen_values = true)]
        op: String,
    },
    /// Projection onto mu_n-invariants
    Reynolds {
        #[arg(allow_hyphen_values = true)]
        op: String,
        #[arg(long)]
        n: u32,
    },
    /// Invariant monomials of total degree at most `max_degree`
    InvariantBasis {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        max_degree: u32,
    },
    /// Certified membership in the generated subalgebra
    Member {
        #[arg(allow_hyphen_values = true)]
        target: String,
        #[command(flatten)]
        source: GenSource,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Polynomials in x inside the bounded span
    Base {
        #[command(flatten)]
        source: GenSource,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Membership in a commutative subalgebra of Q[x, xi]
    GradedMember {
        #[arg(allow_hyphen_values = true)]
        target: String,
        #[command(flatten)]
        source: GenSource,
    },
    /// Whether Q[x, xi] is finite over the generated subalgebra
    Cofinite {
        #[command(flatten)]
        source: GenSource,
        #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
        max_degree: u32,
    },
    /// Symbols of the bounded span
    GradedGens {
        #[command(flatten)]
        source: GenSource,
        #[arg(long, default_value_t = 3)]
        word_length: u32,
    },
    /// Whether an operator preserves Q[t] for a cover t = q(x)
    Dxy {
        #[arg(allow_hyphen_values = true)]
        op: String,
        /// Pure-power cover `t = (x - center)^power`
        #[arg(long, conflicts_with = "cover")]
        power: Option<u32>,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        center: String,
        /// General polynomial cover `t = q(x)`
        #[arg(long, allow_hyphen_values = true)]
        cover: Option<String>,
        #[arg(long, requires = "cover")]
        power_bound: Option<u32>,
    },
    /// Apply d -> d + p
    Twist {
        #[arg(allow_hyphen_values = true)]
        op: String,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
    },
    /// Apply d -> d - p
    Untwist {
        #[arg(allow_hyphen_values = true)]
        op: String,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
    },
    /// Trace of Q(x) over Q(t), t = (x - a)^m, written in x
    Trace {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(long)]
        m: u32,
        #[command(flatten)]
        center: CenterArg,
    },
    /// Split p into its canonical part and the removable remainder
    Canonicalize {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(long)]
        m: u32,
        #[command(flatten)]
        center: CenterArg,
    },
    /// Classify a graded cofinite subalgebra by its triple (a, m, p)
    Classify {
        #[command(flatten)]
        source: GenSource,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Check that generators produce the algebra of a triple
    VerifyTriple {
        #[command(flatten)]
        triple: TripleArgs,
        #[command(flatten)]
        source: GenSource,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Generators of the algebra of a triple, as a generator file
    Forward {
        #[command(flatten)]
        triple: TripleArgs,
    },
    /// Ramification profile of x -> q(x)
    Ramify {
        #[arg(allow_hyphen_values = true)]
        q: String,
    },
    /// Whether every ramified fiber of q has equal local indices
    Uniform {
        #[arg(allow_hyphen_values = true)]
        q: String,
    },
    /// Riemann-Hurwitz identity for q
    Hurwitz {
        #[arg(allow_hyphen_values = true)]
        q: String,
    },
    /// Whether the subgroup of S_n generated by the cycles has no transposition
    SnUniform {
        #[arg(long)]
        n: usize,
        /// Permutations in cycle notation, e.g. "(1 2 3)(4 5)"
        perms: Vec<String>,
    },
}

enum Status {
    Ok,
    Unknown,
}

/// One JSON response; keys keep insertion order.
struct Report {
    status: Status,
    fields: Map<String, Value>,
}

impl Report {
    fn ok(result: Value) -> Self {
        Self::with(Status::Ok, result)
    }

    fn unknown(result: Value) -> Self {
        Self::with(Status::Unknown, result)
    }

    fn with(status: Status, result: Value) -> Self {
        let mut fields = Map::new();
        fields.insert("result".into(), result);
        Self { status, fields }
    }

    fn field(mut self, key: &str, value: Value) -> Self {
        self.fields.insert(key.into(), value);
        self
    }

    fn render(self) -> (Value, ExitCode) {
        let (name, code) = match self.status {
            Status::Ok => ("ok", ExitCode::SUCCESS),
            Status::Unknown => ("unknown", ExitCode::from(2)),
        };
        let mut out = Map::new();
        out.insert("status".into(), json!(name));
        out.extend(self.fields);
        (Value::Object(out), code)
    }
}

type CliResult = std::result::Result<Report, Error>;

fn rational(text: &str) -> std::result::Result<Rational, Error> {
    parse_rational(text.trim())
        .ok_or_else(|| Error::InvalidArgument(format!("`{text}` is not a rational number")))
}

fn text(v: &impl ToString) -> Value {
    Value::String(v.to_string())
}

fn texts<T: ToString>(items: &[T]) -> Value {
    Value::Array(items.iter().map(text).collect())
}

fn bounds_json(b: SearchBounds) -> Value {
    json!({"word_length": b.word_length, "x_degree_cap": b.x_degree_cap, "order_cap": b.order_cap})
}

impl GenSource {
    fn file(&self) -> std::result::Result<Option<GenSetFile>, Error> {
        match (&self.gens_file, self.gens.is_empty()) {
            (Some(_), false) => Err(Error::InvalidArgument(
                "give either --gens-file or --gen, not both".into(),
            )),
            (None, true) => Err(Error::InvalidArgument("no generators given".into())),
            (Some(path), true) => GenSetFile::load(path).map(Some),
            (None, false) => Ok(None),
        }
    }

    fn filtered(
        &self,
        overrides: &BoundArgs,
    ) -> std::result::Result<(FilteredGenSet, SearchBounds), Error> {
        let (gens, file_bounds) = match self.file()? {
            Some(file) => (file.generator_set()?, file.search_bounds()?),
            None => {
                let ops = self
                    .gens
                    .iter()
                    .map(|g| parse_op(g))
                    .collect::<std::result::Result<Vec<_>, _>>()?;
                (FilteredGenSet::from_ops(ops)?, SearchBounds::default())
            }
        };
        let spec = BoundsSpec {
            word_length: overrides.word_length,
            x_degree_cap: overrides.x_degree_cap,
            order_cap: overrides.order_cap,
        };
        Ok((gens, spec.resolve(file_bounds)?))
    }

    fn graded(&self) -> std::result::Result<GradedGenSet, Error> {
        let named = match self.file()? {
            Some(file) => file
                .generators
                .iter()
                .map(|g| Ok((g.name.clone(), parse_graded(&g.expr)?)))
                .collect::<std::result::Result<Vec<_>, Error>>()?,
            None => self
                .gens
                .iter()
                .enumerate()
                .map(|(k, g)| Ok((format!("g{}", k + 1), parse_graded(g)?)))
                .collect::<std::result::Result<Vec<_>, Error>>()?,
        };
        GradedGenSet::new(named)
    }
}

fn triple(args: &TripleArgs) -> std::result::Result<Triple, Error> {
    Triple::new(rational(&args.a)?, args.m, parse_poly(&args.p)?)
}

fn triple_json(t: &Triple) -> Value {
    json!({"a": text(t.a()), "m": t.m(), "p": text(t.p())})
}

fn certificate_text(certs: &[Certificate]) -> Value {
    text(
        &certs
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join("; "),
    )
}

fn run(command: Command) -> CliResult {
    Ok(match command {
        Command::Mul { factors } => {
            let mut acc = WeylOp::one();
            for f in &factors {
                acc = &acc * &parse_op(f)?;
            }
            Report::ok(text(&acc))
        }
        Command::Apply { op, f } => Report::ok(text(&parse_op(&op)?.apply(&parse_poly(&f)?))),
        Command::Symbol { op } => {
            let op = parse_op(&op)?;
            Report::ok(text(&op.symbol())).field("order", text(&op.order()))
        }
        Command::Reynolds { op, n } => Report::ok(text(&reynolds(&parse_op(&op)?, n)?)),
        Command::InvariantBasis { n, max_degree } => {
            Report::ok(texts(&invariant_basis(n, max_degree)?))
        }
        Command::Member {
            target,
            source,
            bounds,
        } => {
            let (gens, bounds) = source.filtered(&bounds)?;
            match member(&parse_op(&target)?, &gens, bounds)? {
                Membership::Member(c) => Report::ok(json!(true)).field("certificate", text(&c)),
                Membership::Unknown => Report::unknown(Value::Null),
            }
            .field("bounds_used", bounds_json(bounds))
        }
        Command::Base { source, bounds } => {
            let (gens, bounds) = source.filtered(&bounds)?;
            Report::ok(texts(&base(&gens, bounds))).field("bounds_used", bounds_json(bounds))
        }
        Command::GradedMember { target, source } => {
            let gens = source.graded()?;
            match graded_member(&parse_graded(&target)?, &gens)? {
                GradedMembership::Member(c) => {
                    Report::ok(json!(true)).field("certificate", text(&c))
                }
                GradedMembership::NotMember => Report::ok(json!(false)),
                GradedMembership::Unknown => Report::unknown(Value::Null),
            }
        }
        Command::Cofinite { source, max_degree } => cofinite(&source.graded()?, max_degree)?,
        Command::GradedGens {
            source,
            word_length,
        } => {
            let (gens, _) = source.filtered(&BoundArgs {
                word_length: None,
                x_degree_cap: None,
                order_cap: None,
            })?;
            Report::ok(texts(&graded_generators(&gens, word_length)?))
                .field("bounds_used", json!({"word_length": word_length}))
        }
        Command::Dxy {
            op,
            power,
            center,
            cover,
            power_bound,
        } => {
            let cov = match (power, cover) {
                (Some(m), None) => Covering::pure_power(rational(&center)?, m)?,
                (None, Some(q)) => Covering::general(parse_poly(&q)?, power_bound)?,
                _ => {
                    return Err(Error::InvalidArgument(
                        "give exactly one of --power or --cover".into(),
                    ))
                }
            };
            match dxy_member(&parse_op(&op)?, &cov)? {
                DxyVerdict::Member {
                    checked_up_to,
                    heuristic,
                } => Report::ok(json!(true))
                    .field("checked_up_to", json!(checked_up_to))
                    .field("heuristic", json!(heuristic)),
                DxyVerdict::NotMember { k, residue } => Report::ok(json!(false))
                    .field("witness", json!({"k": k, "residue": text(&residue)})),
            }
        }
        Command::Twist { op, p } => Report::ok(text(&twist(&parse_op(&op)?, &parse_poly(&p)?))),
        Command::Untwist { op, p } => Report::ok(text(&untwist(&parse_op(&op)?, &parse_poly(&p)?))),
        Command::Trace { f, m, center } => Report::ok(text(&trace_poly(
            &parse_poly(&f)?,
            m,
            &rational(&center.center)?,
        )?)),
        Command::Canonicalize { p, m, center } => {
            let (canon, r) = canonicalize_p(&parse_poly(&p)?, m, &rational(&center.center)?)?;
            Report::ok(json!({"p": text(&canon), "r": text(&r)}))
        }
        Command::Classify { source, bounds } => {
            let (gens, bounds) = source.filtered(&bounds)?;
            match classify(&gens, bounds)? {
                Classification::Classified {
                    triple,
                    triple_certificates,
                    generator_certificates,
                } => Report::ok(triple_json(&triple))
                    .field("certificate", certificate_text(&triple_certificates))
                    .field("generator_certificates", texts(&generator_certificates)),
                Classification::Unknown(reason) => {
                    Report::unknown(Value::Null).field("reason", json!(reason))
                }
            }
            .field("bounds_used", bounds_json(bounds))
        }
        Command::VerifyTriple {
            triple: args,
            source,
            bounds,
        } => {
            let t = triple(&args)?;
            let (gens, bounds) = source.filtered(&bounds)?;
            match verify_triple(&t, &gens, bounds)? {
                TripleVerdict::Equal {
                    triple_certificates,
                    generator_certificates,
                } => Report::ok(json!(true))
                    .field("certificate", certificate_text(&triple_certificates))
                    .field("generator_certificates", texts(&generator_certificates)),
                TripleVerdict::Distinct(ob) => {
                    Report::ok(json!(false)).field("certificate", text(&ob))
                }
                TripleVerdict::Unknown => Report::unknown(Value::Null),
            }
            .field("bounds_used", bounds_json(bounds))
        }
        Command::Forward { triple: args } => {
            let gens = forward(&triple(&args)?);
            let entries: Vec<Value> = gens
                .generators()
                .iter()
                .map(|(name, op)| json!({"name": name, "expr": text(op)}))
                .collect();
            Report::ok(json!({"generators": entries}))
        }
        Command::Ramify { q } => {
            let profile = ramification_profile(&parse_poly(&q)?)?;
            let fibers: Vec<Value> = profile
                .entries
                .iter()
                .map(|e| {
                    json!({
                        "critical_value": text(&e.critical_value),
                        "indices": profile.fiber_indices(e),
                    })
                })
                .collect();
            Report::ok(json!({
                "degree": profile.degree,
                "fibers": fibers,
                "infinity_index": profile.infinity_index,
            }))
        }
        Command::Uniform { q } => match uniform_ramified(&parse_poly(&q)?)? {
            Uniformity::Uniform => Report::ok(json!(true)),
            Uniformity::Mixed {
                critical_value,
                indices,
            } => Report::ok(json!(false)).field(
                "witness",
                json!({"critical_value": text(&critical_value), "indices": indices}),
            ),
        },
        Command::Hurwitz { q } => {
            let q = parse_poly(&q)?;
            let (lhs, rhs) = ramification::hurwitz_sides(&q)?;
            Report::ok(json!(hurwitz_check(&q)?)).field("sides", json!([lhs, rhs]))
        }
        Command::SnUniform { n, perms } => {
            let gens = perms
                .iter()
                .map(|p| Permutation::parse_cycles(p, n))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            let result = sn_uniform(n, &gens)?;
            let report = Report::ok(json!(result));
            match find_transposition(n, &gens)? {
                Some(t) => report.field("witness", text(&t)),
                None => report,
            }
        }
    })
}

fn cofinite(gens: &GradedGenSet, max_degree: u32) -> CliResult {
    let v = cofinite_check(gens, max_degree)?;
    let mut report = match v.status {
        CofiniteStatus::Cofinite => Report::ok(json!(true)),
        CofiniteStatus::NotCofinite => Report::ok(json!(false)),
        CofiniteStatus::Unknown => Report::unknown(Value::Null),
    };
    if let Some(route) = v.route {
        let route = match route {
            CofiniteRoute::WeightedHomogeneous { wx, wxi } => {
                json!({"weighted_homogeneous": [wx, wxi]})
            }
            CofiniteRoute::XiHomogeneous => json!("xi_homogeneous"),
            CofiniteRoute::TopForms => json!("top_forms"),
        };
        report = report.field("route", route);
    }
    if let Some(n) = v.nullstellensatz_degree {
        report = report.field("nullstellensatz_degree", json!(n));
    }
    if !v.certificates.is_empty() {
        let certs: Vec<String> = v
            .certificates
            .iter()
            .map(|c| {
                let terms: Vec<String> = c
                    .multipliers
                    .iter()
                    .map(|(g, m)| format!("({m}) {g}"))
                    .collect();
                format!("{} = {}", c.target, terms.join(" + "))
            })
            .collect();
        report = report.field("certificate", json!(certs.join("; ")));
    }
    if let Some(w) = v.witness {
        let curve = match w.curve {
            WitnessCurve::WeightedOrbit { wx, wxi } => json!({"weighted_orbit": [wx, wxi]}),
            WitnessCurve::VerticalLine => json!("vertical_line"),
            WitnessCurve::HorizontalLine => json!("horizontal_line"),
        };
        report = report.field(
            "witness",
            json!({"point": [text(&w.point.0), text(&w.point.1)], "curve": curve}),
        );
    }
    Ok(report.field("bounds_used", json!({"max_degree": max_degree})))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(64)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let (value, code) = match run(cli.command) {
        Ok(report) => report.render(),
        Err(e) => (
            json!({"status": "error", "result": null, "message": e.to_string()}),
            ExitCode::from(1),
        ),
    };
    println!("{value}");
    code
}
