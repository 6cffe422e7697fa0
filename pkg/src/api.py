from fastapi import FastAPI
from src.changeSpace.controller import router as change_space_router
from src.evaluation.controller import router as evaluation_router
from src.encoder.controller import router as encoder_router

def register_routes(app: FastAPI):
    app.include_router(change_space_router)
    app.include_router(evaluation_router)
    app.include_router(encoder_router)
