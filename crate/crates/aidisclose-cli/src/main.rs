//! `aidisclose` — validate, aggregate, render and disclose faceted AI-use
//! annotations from grid files, Markdown or LaTeX sources.
//!
//! Exit codes: 0 success, 1 validation or semantic failure, 2 usage or I/O
//! failure. The artifact goes to stdout; diagnostics go to stderr.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use aidisclose::{
    aggregate_records, export_json, generate_disclosure, make_bibtex_all, render_badge,
    render_html, render_latex, scan_document, serialize_grid, to_grid_file, validate_record,
    AggregationPolicy, AnnotationRecord, BadgeStyle, DisclosureProfile, ExtensionRegistry,
    IssueSeverity, RenderError, ScanReport, ScopePath, Severity, SourceFormat, TemplateRegistry,
    ToolRef,
};

/// Environment variable consulted when `--registry` is not given.
const REGISTRY_ENV: &str = "AIDISCLOSE_REGISTRY";

#[derive(Parser)]
#[command(
    name = "aidisclose",
    version,
    about = "Faceted AI-use annotations: validate, disclose, aggregate, render, scan, cite",
    max_term_width = 100
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Extension registry file (fallback: $AIDISCLOSE_REGISTRY)
    #[arg(long, global = true, value_name = "PATH")]
    registry: Option<PathBuf>,

    /// Promote warnings to errors (nonzero exit)
    #[arg(long, global = true)]
    strict: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check every annotation in a source against the model
    Validate(InputArgs),
    /// Generate a prose disclosure statement for a scope
    Disclose {
        #[command(flatten)]
        input: InputArgs,
        /// Audience profile of the generated statement
        #[arg(long, value_enum, default_value_t = ProfileArg::Explanatory)]
        profile: ProfileArg,
        /// Scope to disclose (label such as "section 2" or "paragraph 12")
        #[arg(long, default_value = "document")]
        scope: String,
    },
    /// Fold all annotations into one summary grid (per-facet maximum)
    Aggregate(InputArgs),
    /// Render the effective annotation in another representation
    Render {
        #[command(flatten)]
        input: InputArgs,
        /// Representation to emit
        #[arg(long, value_enum, default_value_t = RenderFormat::Text)]
        output_format: RenderFormat,
        /// Scope whose effective annotation is rendered
        #[arg(long, default_value = "document")]
        scope: String,
        /// Badge layout for svg output
        #[arg(long, value_enum, default_value_t = BadgeStyleArg::Compact)]
        badge_style: BadgeStyleArg,
    },
    /// List every annotation found in a source
    Scan {
        #[command(flatten)]
        input: InputArgs,
        /// Listing format
        #[arg(long, value_enum, default_value_t = ScanFormat::Text)]
        output_format: ScanFormat,
    },
    /// Emit BibTeX entries for the AI tools in a JSON export or registry
    Cite {
        /// JSON export file ("-" for stdin); may be omitted when the
        /// registry declares tools
        input: Option<PathBuf>,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Input file; "-" or omitted reads stdin
    input: Option<PathBuf>,

    /// Input format (auto: by file extension, defaulting to grid)
    #[arg(long, value_enum, default_value_t = FormatArg::Auto)]
    format: FormatArg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Auto,
    Grid,
    Markdown,
    Latex,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ProfileArg {
    Explanatory,
    Publisher,
    Compliance,
}

impl From<ProfileArg> for DisclosureProfile {
    fn from(arg: ProfileArg) -> Self {
        match arg {
            ProfileArg::Explanatory => DisclosureProfile::Explanatory,
            ProfileArg::Publisher => DisclosureProfile::Publisher,
            ProfileArg::Compliance => DisclosureProfile::Compliance,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RenderFormat {
    Text,
    Json,
    Svg,
    Latex,
    Html,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScanFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BadgeStyleArg {
    Compact,
    Labeled,
}

/// A command failure with its exit code; the message goes to stderr.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn semantic(message: impl Into<String>) -> Failure {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            if !failure.message.is_empty() {
                eprintln!("aidisclose: {}", failure.message);
            }
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let registry = load_registry(&cli)?;
    match &cli.command {
        Command::Validate(input) => cmd_validate(input, registry.as_ref(), cli.strict),
        Command::Disclose {
            input,
            profile,
            scope,
        } => cmd_disclose(
            input,
            (*profile).into(),
            scope,
            registry.as_ref(),
            cli.strict,
        ),
        Command::Aggregate(input) => cmd_aggregate(input, cli.strict),
        Command::Render {
            input,
            output_format,
            scope,
            badge_style,
        } => cmd_render(input, *output_format, scope, *badge_style, cli.strict),
        Command::Scan {
            input,
            output_format,
        } => cmd_scan(input, *output_format, cli.strict),
        Command::Cite { input } => cmd_cite(input.as_deref(), registry.as_ref()),
    }
}

fn load_registry(cli: &Cli) -> Result<Option<ExtensionRegistry>, Failure> {
    let path = cli
        .registry
        .clone()
        .or_else(|| std::env::var(REGISTRY_ENV).ok().map(PathBuf::from));
    match path {
        None => Ok(None),
        Some(path) => ExtensionRegistry::load(&path)
            .map(Some)
            .map_err(|err| Failure::usage(format!("{}: {err}", path.display()))),
    }
}

/// Reads the input and scans it for annotations.
fn scan_input(args: &InputArgs) -> Result<ScanReport, Failure> {
    let (text, detected) = read_input(args.input.as_deref())?;
    let format = match args.format {
        FormatArg::Grid => SourceFormat::GridFile,
        FormatArg::Markdown => SourceFormat::Markdown,
        FormatArg::Latex => SourceFormat::LaTeX,
        FormatArg::Auto => detected,
    };
    Ok(scan_document(&text, format))
}

fn read_input(path: Option<&std::path::Path>) -> Result<(String, SourceFormat), Failure> {
    match path {
        None => read_stdin(),
        Some(p) if p.as_os_str() == "-" => read_stdin(),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|err| Failure::usage(format!("{}: {err}", p.display())))?;
            let format = match p.extension().and_then(|e| e.to_str()) {
                Some("md") | Some("markdown") => SourceFormat::Markdown,
                Some("tex") | Some("latex") => SourceFormat::LaTeX,
                _ => SourceFormat::GridFile,
            };
            Ok((text, format))
        }
    }
}

fn read_stdin() -> Result<(String, SourceFormat), Failure> {
    let mut text = String::new();
    std::io::stdin()
        .read_to_string(&mut text)
        .map_err(|err| Failure::usage(format!("stdin: {err}")))?;
    Ok((text, SourceFormat::GridFile))
}

fn report_issues_to_stderr(report: &ScanReport) {
    for issue in &report.issues {
        let tag = match issue.severity {
            IssueSeverity::Error => "error",
            IssueSeverity::Warning => "warning",
        };
        eprintln!("line {}: {tag}: {}", issue.line, issue.message);
    }
}

fn strict_gate(report: &ScanReport, strict: bool) -> Result<(), Failure> {
    if report.has_errors() {
        return Err(Failure::semantic(String::new()));
    }
    if strict && !report.issues.is_empty() {
        return Err(Failure::semantic("warnings promoted to errors by --strict"));
    }
    Ok(())
}

fn cmd_validate(
    args: &InputArgs,
    registry: Option<&ExtensionRegistry>,
    strict: bool,
) -> Result<(), Failure> {
    let report = scan_input(args)?;

    let mut errors = 0usize;
    let mut warnings = 0usize;
    for issue in &report.issues {
        match issue.severity {
            IssueSeverity::Error => {
                errors += 1;
                println!("line {}: error: {}", issue.line, issue.message);
            }
            IssueSeverity::Warning => {
                warnings += 1;
                println!("line {}: warning: {}", issue.line, issue.message);
            }
        }
    }
    for scanned in &report.annotations {
        let validation = validate_record(&scanned.record, registry);
        for finding in &validation.findings {
            match finding.severity {
                Severity::Error => errors += 1,
                Severity::Warning => warnings += 1,
            }
            println!("line {}: {finding}", scanned.line);
        }
    }
    println!(
        "{} annotation(s), {errors} error(s), {warnings} warning(s)",
        report.annotations.len()
    );

    if errors > 0 || (strict && warnings > 0) {
        return Err(Failure::semantic(String::new()));
    }
    Ok(())
}

fn cmd_disclose(
    args: &InputArgs,
    profile: DisclosureProfile,
    scope: &str,
    registry: Option<&ExtensionRegistry>,
    strict: bool,
) -> Result<(), Failure> {
    let report = scan_input(args)?;
    report_issues_to_stderr(&report);
    strict_gate(&report, strict)?;

    let record = effective_record(&report, scope)?;
    let templates = match registry {
        Some(extensions) => TemplateRegistry::with_extensions(extensions),
        None => TemplateRegistry::default(),
    };
    println!("{}", generate_disclosure(&record, profile, &templates));
    Ok(())
}

fn cmd_aggregate(args: &InputArgs, strict: bool) -> Result<(), Failure> {
    let report = scan_input(args)?;
    report_issues_to_stderr(&report);
    strict_gate(&report, strict)?;

    let pairs = report.pairs();
    let summary = aggregate_records(pairs.iter().map(|(_, r)| r), AggregationPolicy::MaxPerFacet)
        .map_err(|err| Failure::semantic(err.to_string()))?;
    println!("{}", serialize_grid(&summary));
    Ok(())
}

fn cmd_render(
    args: &InputArgs,
    format: RenderFormat,
    scope: &str,
    badge_style: BadgeStyleArg,
    strict: bool,
) -> Result<(), Failure> {
    let report = scan_input(args)?;
    report_issues_to_stderr(&report);
    strict_gate(&report, strict)?;

    if format == RenderFormat::Json {
        print!("{}", export_json(&report.pairs()));
        return Ok(());
    }

    let record = effective_record(&report, scope)?;
    match format {
        RenderFormat::Text => println!("{}", serialize_grid(&record)),
        RenderFormat::Latex => {
            let latex = render_latex(&record).map_err(|err| match err {
                RenderError::CoreNotSupported => Failure::usage(err.to_string()),
            })?;
            println!("{latex}");
        }
        RenderFormat::Svg => {
            let style = match badge_style {
                BadgeStyleArg::Compact => BadgeStyle::Compact,
                BadgeStyleArg::Labeled => BadgeStyle::Labeled,
            };
            print!("{}", render_badge(&record, style));
        }
        RenderFormat::Html => print!("{}", render_html(&record)),
        RenderFormat::Json => unreachable!("handled above"),
    }
    Ok(())
}

fn cmd_scan(args: &InputArgs, format: ScanFormat, strict: bool) -> Result<(), Failure> {
    let report = scan_input(args)?;
    report_issues_to_stderr(&report);

    match format {
        ScanFormat::Text => print!("{}", to_grid_file(&report.pairs())),
        ScanFormat::Json => print!("{}", export_json(&report.pairs())),
    }
    strict_gate(&report, strict)
}

fn cmd_cite(
    input: Option<&std::path::Path>,
    registry: Option<&ExtensionRegistry>,
) -> Result<(), Failure> {
    let mut tools: Vec<ToolRef> = Vec::new();
    let push_unique = |tools: &mut Vec<ToolRef>, tool: &ToolRef| {
        if !tools.iter().any(|t| t.cite_key == tool.cite_key) {
            tools.push(tool.clone());
        }
    };

    if let Some(path) = input {
        let (text, _) = read_input(Some(path))?;
        let annotations = aidisclose::import_json(&text)
            .map_err(|err| Failure::usage(format!("cite input: {err}")))?;
        for (_, record) in &annotations {
            for tool in &record.tools {
                push_unique(&mut tools, tool);
            }
        }
    } else if registry.is_none() {
        return Err(Failure::usage(
            "cite needs a JSON export as input or a registry declaring tools",
        ));
    }
    if let Some(registry) = registry {
        for tool in registry.tools() {
            push_unique(&mut tools, tool);
        }
    }

    if tools.is_empty() {
        return Err(Failure::semantic("no tools to cite"));
    }
    let bibtex = make_bibtex_all(&tools).map_err(|err| Failure::semantic(err.to_string()))?;
    println!("{bibtex}");
    Ok(())
}

/// Builds the document tree from the scan (structure plus annotations) and
/// resolves the effective record at `scope`.
fn effective_record(report: &ScanReport, scope: &str) -> Result<AnnotationRecord, Failure> {
    let scope: ScopePath = scope
        .parse()
        .map_err(|err| Failure::usage(format!("invalid --scope: {err}")))?;
    let (tree, tree_issues) = report.to_tree();
    for issue in &tree_issues {
        if issue.line > 0 {
            eprintln!("line {}: warning: {}", issue.line, issue.message);
        } else {
            eprintln!("warning: {}", issue.message);
        }
    }
    let record = tree
        .resolve_effective(&scope)
        .map_err(|err| Failure::semantic(err.to_string()))?;
    record
        .cloned()
        .ok_or_else(|| Failure::semantic(format!("no annotation resolves at scope '{scope}'")))
}
