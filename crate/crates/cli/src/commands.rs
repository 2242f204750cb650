use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use diffractio::comb::{format_f64, lattice_comb_diffraction, DensitySample, DiffractionOutput, LatticeSpec, Normalization, Region, WeightedComb, BraggPeak};
use diffractio::exact::render_decimal;
use diffractio::homometry::{homometry_check, PeriodicComb};
use diffractio::modelset::{modelset_points, peak_enumeration, CutProjectScheme, Surd, Window};
use diffractio::spectral::{cantor_distribution, gtm_distribution_series, volterra_tm_distribution, DistributionFunction, SeriesWeighting};
use diffractio::stochastic::{
    bernoulli_diffraction, binned_periodogram, dimer_block_diffraction, dimer_density, renewal_diffraction,
    renewal_measure_nu, rm_beta2_h, ProcessSpec, RenewalLaw, RenewalSpec, Sample,
};
use diffractio::substitution::{
    binary_rs_sequence, gtm_sequence, tm_two_sided, CoefficientSystem, ExactCoefficientTable, SubstitutionRule,
};
use diffractio::{Error, Result};

use crate::{Command, Common, Format};

/// Largest lag accepted by `autocorr`.
const MAX_LAG: u64 = 1 << 20;
/// Largest sequence length or grid size accepted anywhere.
const MAX_LEN: usize = 1 << 26;

fn param<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parameter(msg.into()))
}

fn json_bytes<T: Serialize + ?Sized>(v: &T) -> Result<Vec<u8>> {
    let mut out = serde_json::to_vec_pretty(v)?;
    out.push(b'\n');
    Ok(out)
}

fn csv_bytes(header: &[String], rows: impl IntoIterator<Item = Vec<String>>) -> Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    w.into_inner().map_err(|e| Error::Io(e.into_error()))
}

fn diffraction_bytes(d: &DiffractionOutput, format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Json => json_bytes(d),
        Format::Csv => {
            let mut buf = Vec::new();
            d.write_csv(&mut buf)?;
            Ok(buf)
        }
    }
}

/// `points` equally spaced values from `-kmax` to `kmax`.
fn k_grid(kmax: f64, points: usize) -> Result<Vec<f64>> {
    if !(kmax.is_finite() && kmax > 0.0) {
        return param("--kmax must be positive");
    }
    if !(2..=MAX_LEN).contains(&points) {
        return param(format!("--points must lie in 2..={MAX_LEN}"));
    }
    let d = (points - 1) as f64;
    Ok((0..points).map(|i| (2.0 * i as f64 - d) * kmax / d).collect())
}

/// Reads `@path` as a file, otherwise returns the text itself.
fn text_or_file(s: &str) -> Result<String> {
    match s.strip_prefix('@') {
        Some(path) => Ok(std::fs::read_to_string(path)?),
        None => Ok(s.to_string()),
    }
}

pub fn run(cmd: &Command, common: &Common) -> Result<Vec<u8>> {
    match cmd {
        Command::Autocorr(a) => autocorr(a, common),
        Command::Diffract(a) => diffract(a, common),
        Command::Distfun(a) => distfun(a, common),
        Command::Modelset(a) => modelset(a, common),
        Command::Homometry(a) => homometry(a, common),
        Command::Renewal(a) => renewal(a, common),
        Command::Simulate(a) => simulate(a, common),
    }
}

#[derive(Debug, Args)]
pub struct AutocorrArgs {
    /// tm, gtm:k,l, rs (alias rs2, rs4), or another built-in rule name.
    #[arg(long, default_value = "tm")]
    pub system: String,
    #[arg(long, default_value_t = 64)]
    pub max_lag: u64,
    /// Use the empirical autocorrelation of a prefix of this length instead
    /// of the exact recursion.
    #[arg(long)]
    pub empirical: Option<usize>,
}

fn parse_kl(args: &str) -> Result<(u64, u64)> {
    let (k, l) = args.split_once(',').ok_or_else(|| Error::Parameter(format!("expected k,l, got {args:?}")))?;
    let p = |s: &str| s.trim().parse::<u64>().map_err(|_| Error::Parameter(format!("invalid integer {s:?}")));
    Ok((p(k)?, p(l)?))
}

fn coefficient_system(name: &str) -> Result<Option<CoefficientSystem>> {
    Ok(match name {
        "tm" => Some(CoefficientSystem::ThueMorse),
        "rs" | "rs2" | "rs4" => Some(CoefficientSystem::RudinShapiro),
        _ => match name.strip_prefix("gtm:") {
            Some(args) => {
                let (k, l) = parse_kl(args)?;
                Some(CoefficientSystem::GeneralisedMorse { k, l })
            }
            None => {
                SubstitutionRule::named(name)?;
                None
            }
        },
    })
}

fn weight_sequence(system: CoefficientSystem, len: usize) -> Result<Vec<f64>> {
    match system {
        CoefficientSystem::ThueMorse => Ok(tm_two_sided(0..len as i64)),
        CoefficientSystem::GeneralisedMorse { k, l } => gtm_sequence(k, l, len),
        CoefficientSystem::RudinShapiro => binary_rs_sequence(0..len as i64),
    }
}

fn autocorr(a: &AutocorrArgs, common: &Common) -> Result<Vec<u8>> {
    if a.max_lag > MAX_LAG {
        return Err(Error::Resource(format!("--max-lag above {MAX_LAG}")));
    }
    let system = coefficient_system(&a.system)?
        .ok_or_else(|| Error::Parameter(format!("{} has no autocorrelation recursion or weight sequence", a.system)))?;
    if let Some(n) = a.empirical {
        if n > MAX_LEN {
            return Err(Error::Resource(format!("--empirical above {MAX_LEN}")));
        }
        let w = weight_sequence(system, n)?;
        let eta = diffractio::comb::empirical_autocorrelation_real(&w, a.max_lag as usize)?;
        return match common.format {
            Format::Json => json_bytes(&json!({ "system": a.system, "length": n, "eta": eta })),
            Format::Csv => csv_bytes(
                &["m".into(), "eta".into()],
                eta.iter().enumerate().map(|(m, v)| vec![m.to_string(), format_f64(*v)]),
            ),
        };
    }
    let table = ExactCoefficientTable::build(system, a.max_lag)?;
    match common.format {
        Format::Json => json_bytes(&table),
        Format::Csv => {
            let mut header = vec!["m".to_string(), "eta".to_string()];
            if table.theta.is_some() {
                header.push("theta".into());
            }
            let rows = (0..=a.max_lag as i64).map(|m| {
                let mut r = vec![m.to_string(), render_decimal(&table.eta[&m], 12)];
                if let Some(t) = &table.theta {
                    r.push(render_decimal(&t[&m], 12));
                }
                r
            });
            csv_bytes(&header, rows)
        }
    }
}

#[derive(Debug, Args)]
pub struct DiffractArgs {
    /// Lattice basis rows, e.g. `1` or `1,0;0,1`.
    #[arg(long, conflicts_with = "system")]
    pub lattice: Option<String>,
    /// Motif file (`.json` or CSV); a single unit point at the origin by default.
    #[arg(long, requires = "lattice")]
    pub motif: Option<PathBuf>,
    /// Closed-form spectrum: bernoulli:p, dimer, dimer-block or beta2.
    #[arg(long)]
    pub system: Option<String>,
    #[arg(long, default_value_t = 2.0)]
    pub kmax: f64,
    /// Density samples for closed-form systems.
    #[arg(long, default_value_t = 401)]
    pub points: usize,
}

fn parse_rows(s: &str) -> Result<Vec<Vec<f64>>> {
    s.split(';')
        .map(|row| {
            row.split(',')
                .map(|v| v.trim().parse::<f64>().map_err(|_| Error::Parse(format!("invalid number {v:?}"))))
                .collect()
        })
        .collect()
}

fn diffract(a: &DiffractArgs, common: &Common) -> Result<Vec<u8>> {
    let out = match (&a.lattice, &a.system) {
        (Some(basis), _) => {
            let lattice = LatticeSpec::new(parse_rows(basis)?)?;
            let d = lattice.dimension();
            let motif = match &a.motif {
                Some(path) if path.extension().is_some_and(|e| e == "json") => {
                    WeightedComb::from_json(&std::fs::read_to_string(path)?)?
                }
                Some(path) => WeightedComb::read_csv(std::fs::File::open(path)?)?,
                None => WeightedComb::dirac(&vec![0.0; d])?,
            };
            if !(a.kmax.is_finite() && a.kmax > 0.0) {
                return param("--kmax must be positive");
            }
            let region = Region::Box {
                lo: vec![-a.kmax; d],
                hi: vec![a.kmax; d],
            };
            lattice_comb_diffraction(&lattice, &motif, &region)?
        }
        (None, Some(system)) => {
            let grid = k_grid(a.kmax, a.points)?;
            closed_form(system, &grid)?
        }
        (None, None) => return param("give --lattice or --system"),
    };
    diffraction_bytes(&out, common.format)
}

fn closed_form(system: &str, grid: &[f64]) -> Result<DiffractionOutput> {
    let density = |f: &dyn Fn(f64) -> f64| grid.iter().map(|&k| DensitySample { k: vec![k], value: f(k) }).collect();
    if let Some(p) = system.strip_prefix("bernoulli:") {
        let p: f64 = p.parse().map_err(|_| Error::Parse(format!("invalid probability {p:?}")))?;
        return bernoulli_diffraction(p, grid);
    }
    let mut out = DiffractionOutput::empty(Normalization::PerUnitVolume);
    match system {
        "dimer" => out.ac_density = density(&dimer_density),
        "dimer-block" => return dimer_block_diffraction(grid),
        "beta2" => {
            out.pure_point = vec![BraggPeak {
                position: vec![0.0],
                intensity: 1.0,
                extinct: false,
                label: Some(vec![0]),
            }];
            out.ac_density = density(&rm_beta2_h);
        }
        _ => return param(format!("unknown system {system:?}; expected bernoulli:p, dimer, dimer-block or beta2")),
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum DistMethod {
    Volterra,
    Series,
    Cantor,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Weighting {
    Plain,
    Fejer,
}

#[derive(Debug, Args)]
pub struct DistfunArgs {
    #[arg(long, value_enum, default_value_t = DistMethod::Volterra)]
    pub method: DistMethod,
    /// Volterra iterations.
    #[arg(long, default_value_t = 20)]
    pub iterations: u32,
    /// Number of grid cells on [0, 1].
    #[arg(long, default_value_t = 4096)]
    pub grid: usize,
    /// Series terms.
    #[arg(long, default_value_t = 4096)]
    pub terms: u64,
    #[arg(long, default_value_t = 1)]
    pub k: u64,
    #[arg(long, default_value_t = 1)]
    pub l: u64,
    #[arg(long, value_enum, default_value_t = Weighting::Fejer)]
    pub weighting: Weighting,
}

fn distfun(a: &DistfunArgs, common: &Common) -> Result<Vec<u8>> {
    if a.grid > 1 << 22 {
        return Err(Error::Resource("--grid above 2^22".into()));
    }
    let f = match a.method {
        DistMethod::Volterra => volterra_tm_distribution(a.iterations, a.grid)?,
        DistMethod::Series => {
            let w = match a.weighting {
                Weighting::Plain => SeriesWeighting::Plain,
                Weighting::Fejer => SeriesWeighting::Fejer,
            };
            gtm_distribution_series(a.k, a.l, a.terms, a.grid, w)?
        }
        DistMethod::Cantor => {
            if a.grid < 1 {
                return param("--grid must be positive");
            }
            let grid: Vec<f64> = (0..=a.grid).map(|i| i as f64 / a.grid as f64).collect();
            let values = grid.iter().map(|&x| cantor_distribution(x)).collect::<Result<Vec<_>>>()?;
            DistributionFunction::from_samples(grid, values)?
        }
    };
    match common.format {
        Format::Json => json_bytes(&f),
        Format::Csv => {
            let mut buf = Vec::new();
            f.write_csv(&mut buf)?;
            Ok(buf)
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SchemeArg {
    Silvermean,
    Ab,
}

#[derive(Debug, Args)]
pub struct ModelsetArgs {
    #[arg(long, value_enum, default_value_t = SchemeArg::Silvermean)]
    pub system: SchemeArg,
    /// `default`, `interval:lo,hi`, `polygon:x,y;x,y;...` (numbers in
    /// Q(sqrt 2), e.g. `1/2+1/2*sqrt2`) or `polyomino:i,j;i,j;...`.
    #[arg(long, default_value = "default")]
    pub window: String,
    /// Relative intensity cut, as a fraction of the central peak.
    #[arg(long, default_value_t = 1e-3)]
    pub threshold: f64,
    /// Radius of the k-region.
    #[arg(long, default_value_t = 2.0)]
    pub kmax: f64,
    /// List the points in the box [-R, R]^d instead of peaks.
    #[arg(long, value_name = "R")]
    pub points: Option<f64>,
}

fn surd(s: &str) -> Result<Surd> {
    s.trim().parse()
}

fn parse_window(scheme: CutProjectScheme, spec: &str) -> Result<Window> {
    if spec == "default" {
        return Ok(match scheme {
            CutProjectScheme::SilverMean => Window::silver_mean(),
            CutProjectScheme::AmmannBeenker => Window::octagon(),
        });
    }
    let (kind, body) = spec
        .split_once(':')
        .ok_or_else(|| Error::Parameter(format!("window {spec:?} needs a kind prefix")))?;
    match kind {
        "interval" => {
            let (lo, hi) = body.split_once(',').ok_or_else(|| Error::Parameter("interval needs lo,hi".into()))?;
            Window::interval(surd(lo)?, surd(hi)?)
        }
        "polygon" => {
            let verts = body
                .split(';')
                .map(|v| {
                    let (x, y) = v.split_once(',').ok_or_else(|| Error::Parameter(format!("vertex {v:?} needs x,y")))?;
                    Ok([surd(x)?, surd(y)?])
                })
                .collect::<Result<Vec<_>>>()?;
            Window::polygon(verts)
        }
        "polyomino" => {
            let cells = body
                .split(';')
                .map(|c| {
                    let (i, j) = c.split_once(',').ok_or_else(|| Error::Parameter(format!("cell {c:?} needs i,j")))?;
                    let p = |s: &str| s.trim().parse::<i64>().map_err(|_| Error::Parse(format!("invalid integer {s:?}")));
                    Ok((p(i)?, p(j)?))
                })
                .collect::<Result<Vec<_>>>()?;
            Window::polyomino(&cells)
        }
        _ => param(format!("unknown window kind {kind:?}")),
    }
}

fn modelset(a: &ModelsetArgs, common: &Common) -> Result<Vec<u8>> {
    let cps = match a.system {
        SchemeArg::Silvermean => CutProjectScheme::SilverMean,
        SchemeArg::Ab => CutProjectScheme::AmmannBeenker,
    };
    let window = parse_window(cps, &a.window)?;
    let d = cps.physical_dimension();
    let coord_header = |prefix: &str, n: usize| (1..=n).map(|i| format!("{prefix}{i}")).collect::<Vec<_>>();
    if let Some(r) = a.points {
        if !(r.is_finite() && r > 0.0) {
            return param("--points radius must be positive");
        }
        let sample = modelset_points(cps, &window, &Region::Box { lo: vec![-r; d], hi: vec![r; d] })?;
        return match common.format {
            Format::Json => json_bytes(&sample),
            Format::Csv => {
                let mut header = coord_header("c", cps.rank());
                header.extend(["x", "y"].iter().take(d).map(|s| s.to_string()));
                csv_bytes(
                    &header,
                    sample.points.iter().map(|p| {
                        let mut row: Vec<String> = p.coords.iter().map(|c| c.to_string()).collect();
                        row.extend(p.position.iter().map(|v| format_f64(*v)));
                        row
                    }),
                )
            }
        };
    }
    if !(a.kmax.is_finite() && a.kmax > 0.0) {
        return param("--kmax must be positive");
    }
    let peaks = peak_enumeration(cps, &window, &Region::Ball { dimension: d, radius: a.kmax }, a.threshold)?;
    match common.format {
        Format::Json => json_bytes(&peaks),
        Format::Csv => {
            let mut header = coord_header("c", cps.rank());
            header.extend(coord_header("k", d));
            header.push("intensity".into());
            csv_bytes(
                &header,
                peaks.pure_point.iter().map(|p| {
                    let mut row: Vec<String> =
                        p.label.iter().flatten().map(|c| c.to_string()).collect();
                    row.extend(p.position.iter().map(|v| format_f64(*v)));
                    row.push(format_f64(p.intensity));
                    row
                }),
            )
        }
    }
}

#[derive(Debug, Args)]
pub struct HomometryArgs {
    /// First weight list, e.g. `11,25,42,45,31,14`, or `@file`.
    #[arg(long)]
    pub a: String,
    /// Second weight list or `@file`.
    #[arg(long)]
    pub b: String,
    /// Highest correlation order searched for a separating tuple.
    #[arg(long, default_value_t = 8)]
    pub max_order: usize,
}

fn homometry(a: &HomometryArgs, common: &Common) -> Result<Vec<u8>> {
    let c1 = PeriodicComb::parse(&text_or_file(&a.a)?)?;
    let c2 = PeriodicComb::parse(&text_or_file(&a.b)?)?;
    let report = homometry_check(&c1, &c2, a.max_order)?;
    match common.format {
        Format::Json => json_bytes(&report),
        Format::Csv => csv_bytes(
            &["m".into(), "eta_a".into(), "eta_b".into()],
            report.eta_table.iter().map(|r| vec![r.m.to_string(), r.comb1.clone(), r.comb2.clone()]),
        ),
    }
}

#[derive(Debug, Args)]
pub struct RenewalArgs {
    /// Waiting-time law: JSON such as `{"gamma": {"shape": 4}}`, or
    /// `exponential[:rate]`, `gamma:shape[,scale]`, `deterministic:a`,
    /// `discrete:x@p,x@p,...` with rational x and p.
    #[arg(long, default_value = "exponential")]
    pub law: String,
    #[arg(long, default_value_t = 2.0)]
    pub kmax: f64,
    #[arg(long, default_value_t = 401)]
    pub points: usize,
    /// Evaluate the renewal measure on (0, X] instead of the diffraction.
    #[arg(long, value_name = "X")]
    pub nu: Option<f64>,
    /// Spacing of the evaluation points for continuous laws.
    #[arg(long, default_value_t = 0.5)]
    pub step: f64,
    #[arg(long, default_value_t = 64)]
    pub truncation: usize,
    /// Largest acceptable bound on the omitted mass.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

pub fn parse_law(s: &str) -> Result<RenewalLaw> {
    let s = s.trim();
    if s.starts_with('{') {
        return Ok(serde_json::from_str(s)?);
    }
    let q = |t: &str| diffractio::exact::parse_rational(t).ok_or_else(|| Error::Parse(format!("invalid rational {t:?}")));
    let f = |t: &str| t.trim().parse::<f64>().map_err(|_| Error::Parse(format!("invalid number {t:?}")));
    let (kind, body) = s.split_once(':').unwrap_or((s, ""));
    Ok(match kind {
        "exponential" => RenewalLaw::Exponential {
            rate: if body.is_empty() { 1.0 } else { f(body)? },
        },
        "gamma" => {
            let (shape, scale) = body.split_once(',').unwrap_or((body, "1"));
            RenewalLaw::Gamma {
                shape: f(shape)?,
                scale: f(scale)?,
            }
        }
        "deterministic" => RenewalLaw::Deterministic { a: q(body)? },
        "discrete" => RenewalLaw::Discrete {
            atoms: body
                .split(',')
                .map(|a| {
                    let (x, p) = a.split_once('@').ok_or_else(|| Error::Parameter(format!("atom {a:?} needs x@p")))?;
                    Ok((q(x)?, q(p)?))
                })
                .collect::<Result<_>>()?,
        },
        _ => return param(format!("unknown law {kind:?}")),
    })
}

fn renewal(a: &RenewalArgs, common: &Common) -> Result<Vec<u8>> {
    let spec = RenewalSpec::new(parse_law(&a.law)?)?;
    let Some(x_max) = a.nu else {
        let grid = k_grid(a.kmax, a.points)?;
        return diffraction_bytes(&renewal_diffraction(&spec, &grid)?, common.format);
    };
    if !(x_max.is_finite() && x_max > 0.0) {
        return param("--nu must be positive");
    }
    let step = match spec.lattice_step() {
        Some(b) => diffractio::exact::to_f64(&b),
        None => a.step,
    };
    if !(step.is_finite() && step > 0.0) {
        return param("--step must be positive");
    }
    let count = (x_max / step + 1e-9).floor() as usize;
    if count > MAX_LEN {
        return Err(Error::Resource(format!("{count} evaluation points")));
    }
    let xs: Vec<f64> = (1..=count).map(|i| i as f64 * step).collect();
    if xs.is_empty() {
        return param("--nu is below the first evaluation point");
    }
    let nu = renewal_measure_nu(&spec, &xs, a.truncation, a.tol)?;
    match common.format {
        Format::Json => json_bytes(&nu),
        Format::Csv => csv_bytes(
            &["x".into(), if nu.atomic { "mass" } else { "density" }.into()],
            nu.xs.iter().zip(&nu.values).map(|(x, v)| vec![format_f64(*x), format_f64(*v)]),
        ),
    }
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// bernoulli, bernoullise, dimer, dimer-block, ledrappier or renewal.
    #[arg(long, conflicts_with = "spec", required_unless_present = "spec")]
    pub process: Option<String>,
    /// Full process description as JSON (or `@file`); its seed is used.
    #[arg(long)]
    pub spec: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub p: Option<f64>,
    /// Base sequence for bernoullise: ones, thue_morse or rudin_shapiro.
    #[arg(long)]
    pub base: Option<String>,
    #[arg(long)]
    pub rows: Option<usize>,
    #[arg(long)]
    pub cols: Option<usize>,
    /// Renewal waiting-time law, as for the `renewal` subcommand.
    #[arg(long)]
    pub law: Option<String>,
    #[arg(long)]
    pub horizon: Option<f64>,
    /// Substream id for parallel replicas.
    #[arg(long, default_value_t = 0)]
    pub stream: u64,
    /// Return the periodogram averaged into this many bins instead of the sample.
    #[arg(long, value_name = "BINS")]
    pub periodogram: Option<usize>,
}

fn simulate(a: &SimulateArgs, common: &Common) -> Result<Vec<u8>> {
    let spec = match (&a.spec, &a.process) {
        (Some(s), _) => ProcessSpec::from_json(&text_or_file(s)?)?,
        (None, Some(process)) => {
            let mut m = Map::new();
            m.insert("process".into(), json!(process.replace('-', "_")));
            m.insert("seed".into(), json!(common.seed));
            m.insert("stream".into(), json!(a.stream));
            let mut put = |k: &str, v: Option<Value>| {
                if let Some(v) = v {
                    m.insert(k.into(), v);
                }
            };
            put("n", a.n.map(|v| json!(v)));
            put("p", a.p.map(|v| json!(v)));
            put("base", a.base.as_ref().map(|v| json!(v)));
            put("rows", a.rows.map(|v| json!(v)));
            put("cols", a.cols.map(|v| json!(v)));
            put("horizon", a.horizon.map(|v| json!(v)));
            if let Some(l) = &a.law {
                put("law", Some(serde_json::to_value(parse_law(l)?)?));
            }
            serde_json::from_value(Value::Object(m))?
        }
        (None, None) => return param("give --process or --spec"),
    };
    let sample = spec.run()?;
    if let Some(bins) = a.periodogram {
        let Sample::Sequence { values, .. } = &sample else {
            return param("--periodogram needs a one-dimensional weight sequence");
        };
        let p = binned_periodogram(values, bins)?;
        return match common.format {
            Format::Json => json_bytes(&p),
            Format::Csv => csv_bytes(
                &["k".into(), "value".into()],
                p.iter().map(|b| vec![format_f64(b.k), format_f64(b.value)]),
            ),
        };
    }
    match common.format {
        Format::Csv => {
            let mut buf = Vec::new();
            sample.write_csv(&mut buf)?;
            Ok(buf)
        }
        Format::Json => json_bytes(&match &sample {
            Sample::Sequence { first, values } => json!({ "kind": "sequence", "first": first, "values": values }),
            Sample::Array { rows, cols, values } => {
                json!({ "kind": "array", "rows": rows, "cols": cols, "values": values })
            }
            Sample::Points(xs) => json!({ "kind": "points", "values": xs }),
        }),
    }
}
