"""Application factory for the Preftree HTTP service."""

from fastapi import FastAPI

from src.preftree import __version__
from src.preftree.config import settings
from src.preftree.core import configure_logging


def create_app() -> FastAPI:
    """Create and configure the FastAPI application."""
    configure_logging("DEBUG" if settings.debug else settings.log_level)

    app = FastAPI(
        title=settings.app_name,
        description="Preference-ordered maximum spanning tree models from Likert surveys",
        version=__version__,
    )

    # Include routers from domain modules
    from src.preftree.discriminant.resource import router as discriminant_router
    from src.preftree.graph.resource import router as graph_router
    from src.preftree.pipeline.resource import router as pipeline_router

    app.include_router(discriminant_router)
    app.include_router(graph_router)
    app.include_router(pipeline_router)

    @app.get("/health")
    async def health_check():
        """Health check endpoint."""
        return {"status": "healthy", "app": settings.app_name, "version": __version__}

    return app


# Create the app instance
app = create_app()


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(
        "src.preftree.app:app",
        host=settings.host,
        port=settings.port,
        reload=settings.debug,
    )
