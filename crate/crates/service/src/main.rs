use std::net::IpAddr;

use clap::Parser;

#[derive(Parser)]
#[command(
    name = "hsc-service",
    version,
    about = "Upload service for homogeneous subset coding"
)]
struct Args {
    /// Address to listen on.
    #[arg(long, default_value = "127.0.0.1")]
    bind: IpAddr,

    #[arg(long, default_value_t = 8080)]
    port: u16,

    /// Largest accepted request body in bytes.
    #[arg(long, default_value_t = hsc_service::DEFAULT_UPLOAD_LIMIT)]
    max_upload: usize,
}

#[tokio::main]
async fn main() -> std::io::Result<()> {
    let args = Args::parse();
    let listener = tokio::net::TcpListener::bind((args.bind, args.port)).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, hsc_service::app(args.max_upload)).await
}
