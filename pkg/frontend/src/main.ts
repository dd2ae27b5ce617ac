import "./style.css";
import { ApiClient } from "./api";
import { Workbench } from "./app";

const root = document.querySelector<HTMLDivElement>("#app");
if (!root) throw new Error("missing #app mount point");
new Workbench(root, new ApiClient("")).mount();
