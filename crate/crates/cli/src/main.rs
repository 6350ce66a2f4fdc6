use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use trimask_cli::web::{self, ServeOptions, WebOptions};
use trimask_cli::{apply, eval, interactive};

/// Three-point triangle annotation for binary segmentation masks.
///
/// Run without a subcommand for the interactive menu.
#[derive(Parser)]
#[command(name = "trimask", version)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,

    #[command(flatten)]
    web: WebArgs,
}

#[derive(Args, Clone)]
struct WebArgs {
    /// Annotate in the browser through the local service instead of typing
    /// coordinates.
    #[arg(long, global = true)]
    web: bool,

    /// Port for --web.
    #[arg(long = "web-port", default_value_t = 8765, global = true)]
    web_port: u16,

    /// Directory with front-end assets to serve at `/`.
    #[arg(long, global = true)]
    ui_dir: Option<PathBuf>,
}

impl WebArgs {
    fn options(&self) -> Option<WebOptions> {
        self.web.then(|| WebOptions {
            port: self.web_port,
            ui_dir: self.ui_dir.clone(),
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Annotate one image.
    Single {
        image: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Annotate every PNG/JPEG in a folder (non-recursive).
    Batch {
        dir: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Regenerate masks from a JSON Lines annotations file.
    Apply {
        #[arg(long)]
        annotations: PathBuf,
        #[arg(long)]
        images: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare predicted masks against reference masks of the same name.
    Eval {
        #[arg(long)]
        pred: PathBuf,
        #[arg(long = "ref")]
        reference: PathBuf,
        /// Treat gray values above this as foreground instead of requiring
        /// strict 0/255 masks.
        #[arg(long)]
        threshold: Option<u8>,
    },
    /// Run the HTTP annotation service.
    Serve {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 8765)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        /// Sessions may only use paths below this directory. Defaults to the
        /// common parent of --input and --out, or the working directory.
        #[arg(long)]
        root: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let web = cli.web.options();
    let stdin = io::stdin();
    let mut input = stdin.lock();
    let (mut out, mut err) = (io::stdout(), io::stderr());

    let result = match cli.command {
        None => interactive::menu(web.as_ref(), &mut input, &mut out, &mut err),
        Some(Command::Single { image, out: dir })
        | Some(Command::Batch {
            dir: image,
            out: dir,
        }) => interactive::annotate(&image, &dir, web.as_ref(), &mut input, &mut out, &mut err),
        Some(Command::Apply {
            annotations,
            images,
            out: dir,
        }) => apply::run(&annotations, &images, &dir, &mut out, &mut err),
        Some(Command::Eval {
            pred,
            reference,
            threshold,
        }) => eval::run(&pred, &reference, threshold, &mut out, &mut err),
        Some(Command::Serve {
            input,
            out: dir,
            port,
            host,
            root,
        }) => web::serve(
            ServeOptions {
                input,
                out_dir: dir,
                root,
                ui_dir: cli.web.ui_dir,
                host,
                port,
                exit_when_finished: false,
            },
            &mut out,
            &mut err,
        ),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(trimask_cli::exit::FAILURE as u8)
        }
    }
}
