"""Pipeline resource - API route for whole runs on uploaded files."""

from pathlib import Path
from tempfile import TemporaryDirectory
from typing import Optional

from fastapi import APIRouter, File, Form, UploadFile
from fastapi.responses import Response
from fastapi.concurrency import run_in_threadpool

from src.preftree.core import PrefTreeError
from src.preftree.middleware import http_error
from src.preftree.pipeline.core import DiscriminantMode, PipelineConfig
from src.preftree.pipeline.repository import ModelRepository
from src.preftree.pipeline.service import PipelineService

router = APIRouter(prefix="/pipeline", tags=["Pipeline"])


@router.post("/run")
async def run_pipeline(
    data: UploadFile = File(...),
    schema: UploadFile = File(...),
    coefficients: UploadFile = File(...),
    target_class: Optional[str] = Form(None),
):
    """Run the pipeline in coefficients-provided mode on uploaded files."""
    with TemporaryDirectory(prefix="preftree-") as workdir:
        paths = {}
        for name, upload in (("data.csv", data), ("schema.json", schema), ("coefficients.json", coefficients)):
            path = Path(workdir) / name
            path.write_bytes(await upload.read())
            paths[name] = path

        cfg = PipelineConfig(
            data_path=paths["data.csv"],
            schema_path=paths["schema.json"],
            mode=DiscriminantMode.COEFFICIENTS,
            coefficients_path=paths["coefficients.json"],
            target_class=target_class,
        )
        try:
            model = await run_in_threadpool(PipelineService.run_pipeline, cfg)
        except PrefTreeError as e:
            raise http_error(e)
    return Response(content=ModelRepository.to_json(model), media_type="application/json")
