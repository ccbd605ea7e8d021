from .app import app, create_app, execute_run, generate_graph

__all__ = ["app", "create_app", "execute_run", "generate_graph"]
