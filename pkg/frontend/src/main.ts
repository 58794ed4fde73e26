import { liveApi } from "./api";
import { mount } from "./app";

mount(document, liveApi);
