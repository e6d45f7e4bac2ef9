use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use handinput::frame::write_frame;
use handinput::segmentation::calibrate_color_range;
use handinput_service::{Replay, Service, ServiceOptions};

use crate::prepare::{load_config, open_source, prepare, source_failure, take_frames};
use crate::{CalibrateArgs, Failure, RunArgs, ServeArgs};

fn io_failure(what: &Path, e: io::Error) -> Failure {
    Failure::Other(format!("{}: {e}", what.display()))
}

pub(crate) fn run(args: &RunArgs) -> Result<(), Failure> {
    let mut prepared = prepare(&args.pipeline, |cfg| {
        if let Some(dir) = &args.emit_annotated {
            cfg.output.annotate = true;
            cfg.output.annotate_dir = Some(dir.clone());
        }
        if let Some(events) = &args.events {
            cfg.output.events = events.clone();
        }
        if cfg.output.annotate_dir.is_some() {
            cfg.output.annotate = true;
        }
    })?;
    let cfg = prepared.pipeline.config().clone();

    if let Some(dir) = &cfg.output.annotate_dir {
        std::fs::create_dir_all(dir).map_err(|e| io_failure(dir, e))?;
    }
    let events_path = Path::new(&cfg.output.events);
    let mut out: Box<dyn Write> = if cfg.output.events == "-" {
        Box::new(BufWriter::new(io::stdout().lock()))
    } else {
        Box::new(BufWriter::new(File::create(events_path).map_err(|e| io_failure(events_path, e))?))
    };

    let (mut frames, mut skipped, mut events) = (0u64, 0u64, 0u64);
    for (index, item) in prepared.source.by_ref() {
        let frame = match item {
            Ok(f) => f,
            Err(e) => {
                eprintln!("frame {index}: skipped: {e}");
                skipped += 1;
                continue;
            }
        };
        let output = prepared.pipeline.process_frame(index, &frame);
        frames += 1;
        if args.verbose {
            for d in &output.diagnostics {
                eprintln!("frame {index}: {d}");
            }
        }
        for rec in output.records(&cfg) {
            writeln!(out, "{}", rec.to_json_line()).map_err(|e| io_failure(events_path, e))?;
            events += 1;
        }
        if let (Some(dir), Some(annotated)) = (&cfg.output.annotate_dir, &output.annotated) {
            let path = dir.join(format!("frame_{index:06}.png"));
            write_frame(&path, &annotated.frame).map_err(|e| Failure::Other(e.to_string()))?;
        }
    }
    out.flush().map_err(|e| io_failure(events_path, e))?;
    eprintln!("processed {frames} frames ({skipped} skipped), wrote {events} events");
    Ok(())
}

pub(crate) fn calibrate(args: &CalibrateArgs) -> Result<(), Failure> {
    let cfg = load_config(args.config.as_deref())?;
    let mut source = open_source(&args.input)?;
    let frames = take_frames(&mut source, args.frames.unwrap_or(usize::MAX));
    let range = calibrate_color_range(&frames, &cfg.segmentation)
        .map_err(|e| Failure::Other(format!("calibration failed: {e}")))?;
    let json = serde_json::to_string_pretty(&range).expect("ranges always serialize");
    std::fs::write(&args.out, json + "\n").map_err(|e| io_failure(&args.out, e))?;
    eprintln!("calibrated on {} frames: min {:?} max {:?}", frames.len(), range.min, range.max);
    Ok(())
}

pub(crate) fn serve(args: &ServeArgs) -> Result<(), Failure> {
    if !(args.fps > 0.0) {
        return Err(Failure::ConfigInvalid("--fps must be positive".into()));
    }
    let mut prepared = prepare(&args.pipeline, |_| {})?;
    let frames = take_frames(&mut prepared.source, usize::MAX);
    if frames.is_empty() {
        return Err(source_failure(handinput::frame::SourceError::SourceNotFound(args.pipeline.input.clone().into())));
    }
    let _ = tracing_subscriber::fmt().with_writer(io::stderr).try_init();

    let runtime = tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()
        .map_err(|e| Failure::Other(e.to_string()))?;
    runtime.block_on(async {
        let listener = tokio::net::TcpListener::bind(&args.bind)
            .await
            .map_err(|e| Failure::ConfigInvalid(format!("cannot bind {}: {e}", args.bind)))?;
        let addr = listener.local_addr().map_err(|e| Failure::Other(e.to_string()))?;
        let options = ServiceOptions { fps: Some(args.fps), ..Default::default() };
        let service = Service::start(prepared.pipeline, Replay::new(frames, !args.once), options);
        eprintln!("listening on http://{addr}");
        let shutdown = async {
            let _ = tokio::signal::ctrl_c().await;
        };
        let served = handinput_service::serve(listener, &service, shutdown).await;
        service.shutdown();
        served.map_err(|e| Failure::Other(e.to_string()))
    })
}
