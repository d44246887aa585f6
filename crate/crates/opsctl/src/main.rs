use std::io::Write;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use chrono::Utc;
use clap::{Args, Parser, Subcommand};
use mockboard_client::Client;
use mockboard_core::ExamId;
use mockboard_server::{AppState, ServerConfig, SystemClock};
use opsctl::simulate::{simulate, SimulateOptions};
use opsctl::{bank, bootstrap, demo, OpsError};

#[derive(Debug, Parser)]
#[command(
    name = "opsctl",
    version,
    about = "Operate a mock-board examination server"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Where the data directory comes from, for commands that open it directly.
#[derive(Debug, Args)]
struct Local {
    /// TOML configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Overrides the configured data directory.
    #[arg(long)]
    data_dir: Option<PathBuf>,
}

impl Local {
    fn load(&self) -> Result<ServerConfig, OpsError> {
        let (mut config, warnings) = ServerConfig::load(self.config.as_deref())?;
        for w in warnings {
            tracing::warn!("{w}");
        }
        if let Some(dir) = &self.data_dir {
            config.data_dir = dir.clone();
        }
        Ok(config)
    }
}

/// Connection and admin credentials for commands that go through the API.
#[derive(Debug, Args)]
struct Remote {
    #[arg(
        long,
        env = "MOCKBOARD_SERVER",
        default_value = "http://127.0.0.1:8080"
    )]
    server: String,
    #[arg(long, env = "MOCKBOARD_ADMIN_USER", default_value = "admin")]
    admin_user: String,
    #[arg(long, env = "MOCKBOARD_ADMIN_PASSWORD", hide_env_values = true)]
    admin_password: String,
}

impl Remote {
    async fn admin(&self) -> Result<Client, OpsError> {
        let mut client = Client::new(&self.server);
        client.login(&self.admin_user, &self.admin_password).await?;
        Ok(client)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the HTTP service until interrupted.
    Serve {
        #[command(flatten)]
        local: Local,
        #[arg(long)]
        listen: Option<SocketAddr>,
    },
    /// Create a verified admin account (server must be stopped).
    InitAdmin {
        #[command(flatten)]
        local: Local,
        #[arg(long)]
        username: String,
        #[arg(long, env = "MOCKBOARD_NEW_ADMIN_PASSWORD", hide_env_values = true)]
        password: String,
        /// Restrict the admin to one course, by id or name.
        #[arg(long)]
        scope_course: Option<String>,
    },
    /// Add questions to an exam from a question-bank CSV.
    ImportQuestions {
        #[command(flatten)]
        remote: Remote,
        #[arg(long)]
        exam: ExamId,
        file: PathBuf,
    },
    /// Write an exam's questions as a question-bank CSV.
    ExportQuestions {
        #[command(flatten)]
        remote: Remote,
        #[arg(long)]
        exam: ExamId,
        /// Defaults to standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Populate an empty data directory with the demo dataset.
    SeedDemo {
        #[command(flatten)]
        local: Local,
        #[arg(long, default_value = "mockboard-demo")]
        examinee_password: String,
    },
    /// Drive concurrent virtual examinees through one exam.
    Simulate {
        #[command(flatten)]
        remote: Remote,
        #[arg(long)]
        exam: ExamId,
        #[arg(long, default_value_t = 40)]
        examinees: usize,
        /// Correct answers per examinee; random answers when omitted.
        #[arg(long)]
        correct: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
}

async fn shutdown_signal() {
    let ctrl_c = async {
        let _ = tokio::signal::ctrl_c().await;
    };
    #[cfg(unix)]
    let term = async {
        match tokio::signal::unix::signal(tokio::signal::unix::SignalKind::terminate()) {
            Ok(mut s) => {
                s.recv().await;
            }
            Err(_) => std::future::pending().await,
        }
    };
    #[cfg(not(unix))]
    let term = std::future::pending::<()>();
    tokio::select! {
        _ = ctrl_c => {},
        _ = term => {},
    }
    tracing::info!("shutting down");
}

async fn serve(local: &Local, listen: Option<SocketAddr>) -> Result<u8, OpsError> {
    let mut config = local.load()?;
    if let Some(addr) = listen {
        config.listen = addr;
    }
    let store = mockboard_server::open_store(&config)?;
    let listener = tokio::net::TcpListener::bind(config.listen)
        .await
        .map_err(|e| OpsError::Usage(format!("cannot listen on {}: {e}", config.listen)))?;
    let addr = listener.local_addr()?;
    tracing::info!(data_dir = %config.data_dir.display(), "listening on http://{addr}");
    println!("listening on http://{addr}");
    std::io::stdout().flush()?;
    let state = AppState::new(Arc::new(store), Arc::new(SystemClock), config);
    mockboard_server::serve(listener, state, shutdown_signal()).await?;
    Ok(opsctl::EXIT_OK)
}

async fn run(cli: Cli) -> Result<u8, OpsError> {
    match cli.command {
        Command::Serve { local, listen } => serve(&local, listen).await,
        Command::InitAdmin {
            local,
            username,
            password,
            scope_course,
        } => {
            let config = local.load()?;
            let store = mockboard_server::open_store(&config)?;
            let admin = bootstrap::init_admin(
                &store,
                &username,
                &password,
                scope_course.as_deref(),
                Utc::now(),
            )?;
            println!("created admin {} ({})", admin.username, admin.account_id);
            Ok(opsctl::EXIT_OK)
        }
        Command::ImportQuestions { remote, exam, file } => {
            let text = std::fs::read(&file)?;
            let questions = bank::parse_bank(text.as_slice())?;
            let client = remote.admin().await?;
            let added = client.add_questions(exam, questions).await?;
            println!("imported {} questions", added.len());
            Ok(opsctl::EXIT_OK)
        }
        Command::ExportQuestions {
            remote,
            exam,
            output,
        } => {
            let client = remote.admin().await?;
            let name = client.exam(exam).await?.name;
            let csv = bank::write_bank(&name, &client.questions(exam).await?);
            match output {
                Some(path) => std::fs::write(path, csv)?,
                None => std::io::stdout().write_all(csv.as_bytes())?,
            }
            Ok(opsctl::EXIT_OK)
        }
        Command::SeedDemo {
            local,
            examinee_password,
        } => {
            let config = local.load()?;
            let store = mockboard_server::open_store(&config)?;
            let summary = demo::seed_demo(&store, &examinee_password)?;
            println!(
                "seeded {} exams; examinee {} / {} ({})",
                summary.exam_ids.len(),
                demo::DEMO_USERNAME,
                examinee_password,
                summary.examinee_id
            );
            Ok(opsctl::EXIT_OK)
        }
        Command::Simulate {
            remote,
            exam,
            examinees,
            correct,
            seed,
            json,
        } => {
            let report = simulate(&SimulateOptions {
                server: remote.server,
                exam_id: exam,
                examinees,
                admin_user: remote.admin_user,
                admin_password: remote.admin_password,
                correct,
                seed,
            })
            .await?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("report serializes")
                );
            } else {
                print!("{}", report.summary());
            }
            Ok(report.exit_code())
        }
    }
}

fn main() -> ExitCode {
    tracing_subscriber::fmt()
        .with_env_filter(
            tracing_subscriber::EnvFilter::try_from_default_env().unwrap_or_else(|_| "info".into()),
        )
        .with_writer(std::io::stderr)
        .init();
    let cli = Cli::parse();
    let runtime = match tokio::runtime::Runtime::new() {
        Ok(rt) => rt,
        Err(e) => {
            eprintln!("opsctl: {e}");
            return ExitCode::from(opsctl::EXIT_FAILURE);
        }
    };
    match runtime.block_on(run(cli)) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("opsctl: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
