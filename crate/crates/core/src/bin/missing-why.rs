use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use missing_why::abduction::{unravel_fixpoints, AbductionBounds, FixpointHypothesisSet};
use missing_why::service::{
    hypothesis_json, query_from_json, result_json, vocabulary_from_json, Method, Payload, Session, SignatureSpec,
};
use missing_why::syntax::{parse_axiom, Axiom};
use missing_why::{CancelToken, Error, Result};

#[derive(Parser)]
#[command(name = "missing-why", version, about = "Explain why an ontology does not entail an axiom")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(clap::Args)]
struct QueryArgs {
    /// Ontology in functional-style syntax.
    #[arg(long)]
    ontology: PathBuf,
    /// Missing entailment: an axiom, or a JSON file of the form {"missing": [...]}.
    #[arg(long)]
    query: String,
    /// Permitted vocabulary file; defaults to every name in the ontology and query.
    #[arg(long)]
    signature: Option<PathBuf>,
    /// Write the result here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a counterexample or hypotheses with any method.
    Explain {
        #[command(flatten)]
        q: QueryArgs,
        /// small_model, relevant_alpha, relevant_beta, relevant_delta,
        /// relevant_deltabar, naive_abduction or unravel.
        #[arg(long, default_value = "small_model")]
        method: String,
        /// Labels shown per graph element.
        #[arg(long, default_value_t = 3)]
        max_classes: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Number of hypotheses to produce.
        #[arg(long, default_value_t = 10)]
        limit: usize,
        /// Fixpoint hypothesis file, for the unravel method.
        #[arg(long)]
        hypotheses: Option<PathBuf>,
    },
    /// Enumerate hypotheses over the permitted vocabulary.
    Abduce {
        #[command(flatten)]
        q: QueryArgs,
        #[arg(long, default_value_t = 10)]
        limit: usize,
        #[arg(long, default_value_t = 2)]
        max_axioms: usize,
        #[arg(long, default_value_t = 1)]
        max_depth: usize,
    },
    /// Print finite approximations of fixpoint hypotheses.
    Unravel {
        #[arg(long)]
        hypotheses: PathBuf,
        #[arg(long, default_value_t = 5)]
        count: usize,
    },
    /// Run the HTTP service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: std::net::IpAddr,
    },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn parse_query(arg: &str) -> Result<Vec<Axiom>> {
    let path = Path::new(arg);
    if arg.ends_with(".json") && path.exists() {
        query_from_json(&read(path)?)
    } else {
        Ok(vec![parse_axiom(arg)?])
    }
}

fn session(q: &QueryArgs) -> Result<Session> {
    let mut s = Session::new("cli", &read(&q.ontology)?)?;
    let spec = match &q.signature {
        Some(p) => SignatureSpec::Explicit(vocabulary_from_json(&read(p)?)?),
        None => SignatureSpec::All,
    };
    s.set_query(parse_query(&q.query)?, spec)?;
    Ok(s)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            println!("{}", text.trim_end());
            Ok(())
        }
    }
}

fn hypotheses_text(s: &Session) -> String {
    let Some(Payload::Hypotheses { items, .. }) = s.last_result().map(|r| &r.payload) else {
        return String::new();
    };
    let blocks: Vec<String> = items.iter().map(ToString::to_string).collect();
    blocks.join("\n---\n")
}

fn run(cli: Cli) -> Result<()> {
    let cancel = CancelToken::new();
    match cli.command {
        Command::Explain { q, method, max_classes, format, limit, hypotheses } => {
            let method: Method = method.parse()?;
            let mut s = session(&q)?;
            if let Some(p) = hypotheses {
                s.attach_fixpoints(FixpointHypothesisSet::parse(&read(&p)?)?);
            }
            let result = s.generate_explanations(method, limit, &cancel)?.clone();
            let text = match (format, &result.payload) {
                (Format::Dot, Payload::Graph { .. }) => s.graph(max_classes)?.to_dot(),
                (Format::Dot, Payload::Hypotheses { .. }) => hypotheses_text(&s),
                (Format::Json, _) => {
                    serde_json::to_string_pretty(&result_json(&result, max_classes)?).unwrap_or_default()
                }
            };
            emit(q.out.as_deref(), &text)
        }
        Command::Abduce { q, limit, max_axioms, max_depth } => {
            let mut s = session(&q)?;
            s.options.bounds = AbductionBounds { max_axioms, max_depth };
            let result = s.generate_explanations(Method::NaiveAbduction, limit, &cancel)?;
            let Payload::Hypotheses { items, .. } = &result.payload else { unreachable!("abduction yields hypotheses") };
            let json: Vec<_> = items.iter().map(hypothesis_json).collect();
            emit(q.out.as_deref(), &serde_json::to_string_pretty(&json).unwrap_or_default())
        }
        Command::Unravel { hypotheses, count } => {
            let fhs = FixpointHypothesisSet::parse(&read(&hypotheses)?)?;
            let hs = unravel_fixpoints(&fhs, count)?;
            let blocks: Vec<String> = hs.iter().map(ToString::to_string).collect();
            emit(None, &blocks.join("\n---\n"))
        }
        Command::Serve { port, host } => {
            let addr = SocketAddr::new(host, port);
            let rt = tokio::runtime::Runtime::new()?;
            eprintln!("listening on http://{addr}");
            rt.block_on(missing_why::service::http::serve(addr))?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::FAILURE
        }
    }
}
