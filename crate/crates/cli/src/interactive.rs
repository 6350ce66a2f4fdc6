//! The menu-driven console flow and the plain-terminal annotation loop.
//!
//! Without a window, clicks are typed as `x y` pixel coordinates. After the
//! third point the mask is saved and the next image is loaded immediately.

use std::io::{BufRead, Write};
use std::path::Path;

use trimask_core::{Session, SessionError, SessionEvent, SessionState};

use crate::exit;
use crate::web::{self, WebOptions};

pub fn session_error_code(e: &SessionError) -> i32 {
    match e {
        SessionError::NoImagesFound(_) | SessionError::InputNotFound(_) => exit::NO_IMAGES,
        _ => exit::FAILURE,
    }
}

enum Command {
    Point(i64, i64),
    Undo,
    Quit,
    Invalid,
}

fn parse_command(line: &str) -> Command {
    let line = line.trim();
    match line {
        "q" | "Q" => return Command::Quit,
        "u" | "U" => return Command::Undo,
        _ => {}
    }
    let mut parts = line
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(str::parse::<i64>);
    match (parts.next(), parts.next(), parts.next()) {
        (Some(Ok(x)), Some(Ok(y)), None) => Command::Point(x, y),
        _ => Command::Invalid,
    }
}

/// Drives `session` from typed commands until it finishes, the user quits,
/// or input ends. Returns the number of masks written.
pub fn annotate_in_terminal(
    session: &mut Session,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
) -> Result<usize, SessionError> {
    let total = session.images().len();
    let mut announced = None;
    let mut line = String::new();
    while session.state() == SessionState::AwaitingPoints {
        if announced != Some(session.cursor()) {
            let (w, h) = session.current_dimensions().unwrap_or_default();
            writeln!(
                out,
                "[{}/{total}] {} ({w}x{h}): enter 'x y', 'u' to undo, 'q' to quit",
                session.cursor() + 1,
                session.current_name().unwrap_or_default(),
            )?;
            announced = Some(session.cursor());
        }
        write!(out, "point {}> ", session.pending().len() + 1)?;
        out.flush()?;
        line.clear();
        if input.read_line(&mut line)? == 0 {
            writeln!(out)?;
            session.terminate();
            break;
        }
        match parse_command(&line) {
            Command::Quit => {
                session.terminate();
            }
            Command::Undo => match session.undo_point() {
                Ok(_) => writeln!(out, "removed last point")?,
                Err(SessionError::NothingToUndo) => writeln!(out, "nothing to undo")?,
                Err(e) => return Err(e),
            },
            Command::Invalid => writeln!(out, "expected two integers, 'u' or 'q'")?,
            Command::Point(x, y) => match session.add_point(x, y)? {
                SessionEvent::PointRejected { reason } => {
                    writeln!(out, "point rejected: {reason}")?;
                }
                SessionEvent::MaskGenerated { mask, path } => {
                    writeln!(
                        out,
                        "saved {} ({} foreground pixels)",
                        path.display(),
                        mask.count_foreground()
                    )?;
                    session.advance()?;
                }
                _ => {}
            },
        }
    }
    writeln!(out, "done: {} mask(s) written", session.masks_written())?;
    Ok(session.masks_written())
}

/// Opens a session and annotates it either in the terminal or through the
/// web service.
pub fn annotate(
    input_path: &Path,
    out_dir: &Path,
    web: Option<&WebOptions>,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::io::Result<i32> {
    if let Some(opts) = web {
        return web::annotate_in_browser(input_path, out_dir, opts, out, err);
    }
    let mut session = match Session::start(input_path, out_dir) {
        Ok(s) => s.record_annotations(true),
        Err(e) => {
            writeln!(err, "error: {e}")?;
            return Ok(session_error_code(&e));
        }
    };
    match annotate_in_terminal(&mut session, input, out) {
        Ok(_) => Ok(exit::OK),
        Err(e) => {
            writeln!(err, "error: {e}")?;
            Ok(exit::FAILURE)
        }
    }
}

fn prompt(
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    text: &str,
) -> std::io::Result<Option<String>> {
    write!(out, "{text}")?;
    out.flush()?;
    let mut line = String::new();
    if input.read_line(&mut line)? == 0 {
        return Ok(None);
    }
    Ok(Some(line.trim().to_string()))
}

/// The console menu: option 1 annotates one image, option 2 a folder.
pub fn menu(
    web: Option<&WebOptions>,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::io::Result<i32> {
    writeln!(out, "trimask: three-point mask annotation")?;
    writeln!(out, "  1) single image")?;
    writeln!(out, "  2) folder of images")?;
    let choice = prompt(input, out, "Choose an option: ")?.unwrap_or_default();
    let what = match choice.as_str() {
        "1" => "Enter the full path to the image: ",
        "2" => "Enter the full path to the folder: ",
        other => {
            writeln!(err, "error: invalid choice '{other}' (expected 1 or 2)")?;
            return Ok(exit::INVALID_CHOICE);
        }
    };
    let Some(source) = prompt(input, out, what)? else {
        return Ok(exit::FAILURE);
    };
    let Some(dest) = prompt(
        input,
        out,
        "Enter the full path where masks should be saved: ",
    )?
    else {
        return Ok(exit::FAILURE);
    };
    let source = Path::new(&source);
    if choice == "2" && !source.is_dir() {
        writeln!(err, "error: {} is not a folder", source.display())?;
        return Ok(exit::NO_IMAGES);
    }
    annotate(source, Path::new(&dest), web, input, out, err)
}
