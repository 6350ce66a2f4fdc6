//! Runs the HTTP service for the `serve` command and for browser-driven
//! annotation from the menu.

use std::io::Write;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::time::Duration;

use trimask_service::{Server, ServiceConfig};

use crate::exit;

/// Deepest directory containing both paths.
pub fn common_root(a: &Path, b: &Path) -> PathBuf {
    let mut root = PathBuf::new();
    for (x, y) in a.components().zip(b.components()) {
        if x != y {
            break;
        }
        root.push(x);
    }
    root
}

fn sandbox_root(input: &Path, out_dir: &Path) -> std::io::Result<(PathBuf, PathBuf, PathBuf)> {
    std::fs::create_dir_all(out_dir)?;
    let input = input.canonicalize()?;
    let out_dir = out_dir.canonicalize()?;
    let base = if input.is_dir() {
        input.clone()
    } else {
        input.parent().map(Path::to_path_buf).unwrap_or_default()
    };
    Ok((common_root(&base, &out_dir), input, out_dir))
}

pub struct ServeOptions {
    pub input: Option<PathBuf>,
    pub out_dir: Option<PathBuf>,
    pub root: Option<PathBuf>,
    pub ui_dir: Option<PathBuf>,
    pub host: String,
    pub port: u16,
    /// Return once the initial session reaches `Finished`.
    pub exit_when_finished: bool,
}

pub fn serve(opts: ServeOptions, out: &mut dyn Write, err: &mut dyn Write) -> std::io::Result<i32> {
    let mut paths = None;
    let root = match (&opts.input, &opts.out_dir) {
        (Some(input), Some(out_dir)) => {
            let (root, input, out_dir) = match sandbox_root(input, out_dir) {
                Ok(r) => r,
                Err(e) => {
                    writeln!(err, "error: {e}")?;
                    return Ok(exit::NO_IMAGES);
                }
            };
            paths = Some((input, out_dir));
            opts.root.clone().unwrap_or(root)
        }
        (None, None) => match &opts.root {
            Some(r) => r.clone(),
            None => std::env::current_dir()?,
        },
        _ => {
            writeln!(err, "error: --input and --out must be given together")?;
            return Ok(exit::FAILURE);
        }
    };
    let addr: SocketAddr = match format!("{}:{}", opts.host, opts.port).parse() {
        Ok(a) => a,
        Err(e) => {
            writeln!(err, "error: bad address: {e}")?;
            return Ok(exit::FAILURE);
        }
    };
    let mut config = ServiceConfig::new(root);
    config.ui_dir = opts.ui_dir.clone();

    let rt = tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()?;
    rt.block_on(async move {
        let server = Server::bind(addr, &config).await?;
        let state = server.state.clone();
        let local = server.local_addr()?;
        writeln!(out, "serving {} on http://{local}/", state.root().display())?;

        let session_id = match paths {
            Some((input, out_dir)) => {
                let view = match state
                    .create_session(&input.to_string_lossy(), &out_dir.to_string_lossy())
                {
                    Ok(v) => v,
                    Err(e) => {
                        writeln!(err, "error: {e}")?;
                        let code = if e.status().as_u16() == 404 {
                            exit::NO_IMAGES
                        } else {
                            exit::FAILURE
                        };
                        return Ok(code);
                    }
                };
                writeln!(
                    out,
                    "session {} with {} image(s): http://{local}/?session={}",
                    view.session_id, view.total_images, view.session_id
                )?;
                Some(view.session_id)
            }
            None => None,
        };
        out.flush()?;

        let running = tokio::spawn(server.run());
        match session_id {
            Some(id) if opts.exit_when_finished => {
                loop {
                    tokio::time::sleep(Duration::from_millis(200)).await;
                    match state.view(&id) {
                        Ok(v) if v.state == "Finished" => break,
                        Ok(_) => {}
                        Err(_) => break,
                    }
                }
                running.abort();
                writeln!(out, "session finished")?;
                Ok(exit::OK)
            }
            _ => {
                running.await.map_err(std::io::Error::other)??;
                Ok(exit::OK)
            }
        }
    })
}

/// Browser-driven annotation settings.
#[derive(Debug, Clone)]
pub struct WebOptions {
    pub port: u16,
    pub ui_dir: Option<PathBuf>,
}

pub fn annotate_in_browser(
    input: &Path,
    out_dir: &Path,
    web: &WebOptions,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::io::Result<i32> {
    serve(
        ServeOptions {
            input: Some(input.to_path_buf()),
            out_dir: Some(out_dir.to_path_buf()),
            root: None,
            ui_dir: web.ui_dir.clone(),
            host: "127.0.0.1".into(),
            port: web.port,
            exit_when_finished: true,
        },
        out,
        err,
    )
}
