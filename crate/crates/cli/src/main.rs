mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use arrangetop::arrangement::{catalog, Arrangement};
use arrangetop::braid::{braid_monodromy_with, decone_with, BraidOptions};
use arrangetop::cover::{global_fiber_connectivity, local_fiber_connectivity};
use arrangetop::cyclo::parse_scalar;
use arrangetop::formality::{candidate_components, formality_report_with};
use arrangetop::milnorfiber::{milnor_spectrum_with, spectrum_crosscheck, PipelineOptions};
use arrangetop::pencil::{base_locus, curve_mhs, lift_pencil, pencil_from_blocks, pullback_e, Block};
use arrangetop::resonance::{build_os, resonance_components, resonance_dim, WeightVector};
use arrangetop::{Error, ErrorKind, Result};

#[derive(Parser)]
#[command(name = "arrangetop", version, about = "Exact topology of complex line arrangements")]
struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Arrangement file.
    file: Option<PathBuf>,
    /// Built-in arrangement: ceva3, triangle, a3, b3, central(k), generic(k).
    #[arg(long)]
    builtin: Option<String>,
}

#[derive(Args)]
struct Deconing {
    /// Line sent to infinity, 1-based; the last line by default.
    #[arg(long)]
    infinity: Option<usize>,
    /// Skip this many candidate shears.
    #[arg(long, default_value_t = 0)]
    shear_offset: usize,
    /// Skip this many candidate projection directions.
    #[arg(long, default_value_t = 0)]
    direction_offset: usize,
    /// Move the basepoint further out by this integer amount.
    #[arg(long, default_value_t = 0)]
    basepoint_shift: i64,
}

#[derive(Subcommand)]
enum Command {
    /// Intersection lattice.
    Lattice {
        #[command(flatten)]
        source: Source,
        /// Print the arrangement in file format instead.
        #[arg(long)]
        emit_input: bool,
    },
    /// Components of the first resonance variety.
    Resonance {
        #[command(flatten)]
        source: Source,
        /// Also report dim H^1(A, a) for these comma-separated weights.
        #[arg(long)]
        weights: Option<String>,
    },
    /// Pencil of a block partition and its lifted curve.
    Pencil {
        #[command(flatten)]
        source: Source,
        /// JSON array of blocks of 1-based lines; a line may be given as [line, exponent].
        #[arg(long)]
        blocks: String,
    },
    /// Connectivity of generic fibers.
    Cover {
        #[command(flatten)]
        source: Source,
        /// Lattice point, 1-based.
        #[arg(long, conflicts_with = "pencil", required_unless_present = "pencil")]
        point: Option<usize>,
        /// Block partition, as for `pencil --blocks`.
        #[arg(long)]
        pencil: Option<String>,
    },
    /// Braid monodromy of a deconing.
    Braid {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        deconing: Deconing,
    },
    /// Monodromy spectrum of H^1 of the Milnor fiber.
    Spectrum {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        deconing: Deconing,
        /// Compare b1(F) with the cyclic-cover computation (d <= 6).
        #[arg(long)]
        crosscheck: bool,
    },
    /// Obstruction to 1-formality of the Milnor fiber.
    Obstruct {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        deconing: Deconing,
    },
    /// Everything, in one document.
    Report {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        deconing: Deconing,
    },
}

fn load(source: &Source) -> Result<Arrangement> {
    match (&source.builtin, &source.file) {
        (Some(name), _) => catalog::builtin(name),
        (None, Some(path)) => {
            let src = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
            Arrangement::parse(&src)
        }
        (None, None) => Err(Error::InvalidArgument("no input".into())),
    }
}

fn parse_blocks(src: &str, d: usize) -> Result<Vec<Block>> {
    let bad = |m: &str| Error::InvalidArgument(format!("blocks: {m}"));
    let v: Value = serde_json::from_str(src).map_err(|e| bad(&e.to_string()))?;
    let index = |x: &Value| -> Result<usize> {
        match x.as_u64() {
            Some(i) if i >= 1 && (i as usize) <= d => Ok(i as usize - 1),
            _ => Err(bad(&format!("{x} is not a line between 1 and {d}"))),
        }
    };
    v.as_array()
        .ok_or_else(|| bad("expected an array of arrays"))?
        .iter()
        .map(|b| {
            b.as_array()
                .ok_or_else(|| bad("expected an array of arrays"))?
                .iter()
                .map(|x| match x.as_array() {
                    Some(pair) if pair.len() == 2 => {
                        let m = pair[1].as_u64().filter(|&m| m >= 1).ok_or_else(|| bad("exponent must be positive"))?;
                        Ok((index(&pair[0])?, m as u32))
                    }
                    Some(_) => Err(bad("expected [line, exponent]")),
                    None => Ok((index(x)?, 1)),
                })
                .collect()
        })
        .collect()
}

fn pipeline(a: &Arrangement, d: &Deconing) -> Result<PipelineOptions> {
    let infinity = match d.infinity {
        Some(0) => return Err(Error::InvalidArgument("lines are numbered from 1".into())),
        Some(i) if i > a.degree() => return Err(Error::InvalidArgument(format!("no line {i}"))),
        i => i.map(|i| i - 1),
    };
    let braid = BraidOptions {
        direction_offset: d.direction_offset,
        basepoint_shift: d.basepoint_shift,
        ..BraidOptions::default()
    };
    Ok(PipelineOptions { infinity, shear_offset: d.shear_offset, braid })
}

struct Output {
    json: Value,
    text: String,
}

fn run(command: &Command) -> Result<Output> {
    match command {
        Command::Lattice { source, emit_input } => {
            let a = load(source)?;
            if *emit_input {
                let text = a.to_file_string();
                return Ok(Output { json: json!({"input": text}), text });
            }
            let l = a.lattice();
            Ok(Output { json: render::lattice(&a, &l), text: render::lattice_text(&a, &l) })
        }
        Command::Resonance { source, weights } => {
            let a = load(source)?;
            let comps = resonance_components(&a)?;
            let mut json = Value::Array(comps.iter().map(render::component).collect());
            let mut text: String = comps.iter().map(|c| render::component_text(c) + "\n").collect();
            if let Some(w) = weights {
                let k = a.conductor();
                let entries = w.split(',').map(|s| parse_scalar(s.trim(), k)).collect::<Result<Vec<_>>>()?;
                if entries.len() != a.degree() {
                    return Err(Error::InvalidArgument(format!("expected {} weights", a.degree())));
                }
                let dim = resonance_dim(&build_os(&a), &WeightVector::new(entries)?)?;
                json = json!({"components": json, "resonance_dim": dim});
                text += &format!("dim H^1(A, a) = {dim}\n");
            }
            Ok(Output { json, text })
        }
        Command::Pencil { source, blocks } => {
            let a = load(source)?;
            let p = pencil_from_blocks(&a, &parse_blocks(blocks, a.degree())?)?;
            let base = base_locus(&a, &p)?;
            let curve = lift_pencil(&a, &p)?;
            let mhs = curve_mhs(&curve)?;
            let e = pullback_e(&mhs)?;
            Ok(Output { json: render::pencil(&p, &base, &curve, &mhs, &e), text: render::pencil_text(&p, &curve, &mhs, &e) })
        }
        Command::Cover { source, point, pencil } => {
            let a = load(source)?;
            let v = match (point, pencil) {
                (Some(0), _) => return Err(Error::InvalidArgument("points are numbered from 1".into())),
                (Some(i), _) => local_fiber_connectivity(&a, i - 1)?,
                (None, Some(b)) => global_fiber_connectivity(&a, &pencil_from_blocks(&a, &parse_blocks(b, a.degree())?)?)?,
                (None, None) => return Err(Error::InvalidArgument("give --point or --pencil".into())),
            };
            Ok(Output { json: render::verdict(&v), text: render::verdict_text(&v) })
        }
        Command::Braid { source, deconing } => {
            let a = load(source)?;
            let o = pipeline(&a, deconing)?;
            let aa = decone_with(&a, o.infinity.unwrap_or(a.degree() - 1), o.shear_offset)?;
            let md = braid_monodromy_with(&aa, &o.braid)?;
            Ok(Output { json: render::braid(&md), text: render::braid_text(&md) })
        }
        Command::Spectrum { source, deconing, crosscheck } => {
            let a = load(source)?;
            let s = milnor_spectrum_with(&a, &pipeline(&a, deconing)?)?;
            let mut json = render::spectrum(&s);
            let mut text = render::spectrum_text(&s);
            if *crosscheck {
                let ok = spectrum_crosscheck(&a)?;
                json["crosscheck"] = json!(ok);
                text += &format!("cyclic cover crosscheck: {}\n", if ok { "agrees" } else { "DISAGREES" });
                if !ok {
                    return Err(Error::Internal("spectrum disagrees with the cyclic cover".into()));
                }
            }
            Ok(Output { json, text })
        }
        Command::Obstruct { source, deconing } => {
            let a = load(source)?;
            let s = milnor_spectrum_with(&a, &pipeline(&a, deconing)?)?;
            let r = formality_report_with(&a, &s)?;
            Ok(Output { json: render::obstruction(&r), text: render::obstruction_text(&r) })
        }
        Command::Report { source, deconing } => {
            let a = load(source)?;
            let l = a.lattice();
            let comps = resonance_components(&a)?;
            let candidates = candidate_components(&a)?;
            let s = milnor_spectrum_with(&a, &pipeline(&a, deconing)?)?;
            let r = formality_report_with(&a, &s)?;
            let mut text = render::lattice_text(&a, &l);
            text += &format!("{} resonance components\n", comps.len());
            text += &comps.iter().map(|c| format!("  {}\n", render::component_text(c))).collect::<String>();
            text += &render::spectrum_text(&s);
            text += &render::obstruction_text(&r);
            let json = json!({
                "lattice": render::lattice(&a, &l),
                "resonance": comps.iter().map(render::component).collect::<Vec<_>>(),
                "pencils": candidates.iter().map(render::candidate).collect::<Vec<_>>(),
                "spectrum": render::spectrum(&s),
                "summary": text,
                "verdict": render::obstruction(&r),
            });
            Ok(Output { json, text })
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("ARRANGETOP_THREADS").ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    configure_threads();
    match run(&cli.command) {
        Ok(out) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable")),
                Format::Text => print!("{}", out.text),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e.kind() {
                ErrorKind::Input => 1,
                ErrorKind::Precondition => 2,
                ErrorKind::Internal => 3,
            })
        }
    }
}
